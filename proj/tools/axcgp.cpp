// axcgp: run search matrices, evaluate and export circuits, analyze result tables.
#include <axcgp/axcgp.hpp>
#include <axcgp/io/experiment.hpp>
#include <axcgp/io/results_csv.hpp>
#include <axcgp/io/serialization.hpp>
#include <axcgp/io/svg.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace axcgp;

namespace
{

// exit codes
constexpr int exit_ok = 0;
constexpr int exit_run_failed = 1;
constexpr int exit_bad_input = 2;

void write_file( fs::path const& path, std::string const& content )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write " + path.string() );
  out << content;
  if ( !out )
    throw std::runtime_error( "error while writing " + path.string() );
}

std::string utc_timestamp()
{
  auto const t = std::chrono::system_clock::to_time_t( std::chrono::system_clock::now() );
  std::tm tm{};
  gmtime_r( &t, &tm );
  std::ostringstream os;
  os << std::put_time( &tm, "%Y-%m-%dT%H:%M:%SZ" );
  return os.str();
}

golden_spec parse_golden_option( std::string const& s )
{
  auto const colon = s.find( ':' );
  if ( colon == std::string::npos )
    throw format_error( "--golden: expected KIND:WIDTH, got '" + s + "'" );
  golden_spec g;
  g.kind = golden_kind_from_string( s.substr( 0, colon ) );
  try
  {
    g.width = static_cast<std::uint32_t>( std::stoul( s.substr( colon + 1 ) ) );
  }
  catch ( std::exception const& )
  {
    throw format_error( "--golden: bad width in '" + s + "'" );
  }
  if ( g.width < 1u || 2u * g.width > max_exhaustive_inputs )
    throw format_error( "--golden: width out of range in '" + s + "'" );
  return g;
}

struct run_options
{
  std::string config;
  std::optional<std::string> out_dir;
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget_evals;
  std::optional<double> wall_clock_secs;
  std::optional<std::string> cost_table;
  bool timestamp = false;
  bool quiet = false;
};

int cmd_run( run_options const& o )
{
  auto cfg = load_experiment_config( o.config );
  if ( o.seed )
    cfg.seed = *o.seed;
  if ( o.budget_evals )
    cfg.budget.max_evaluations = *o.budget_evals;
  if ( o.wall_clock_secs )
  {
    if ( *o.wall_clock_secs < 0.0 )
      throw format_error( "--wall-clock-secs must be non-negative" );
    cfg.budget.wall_clock_secs = *o.wall_clock_secs;
  }
  if ( o.cost_table )
  {
    cfg.cost_table_path = *o.cost_table;
    cfg.costs = load_cost_table( *o.cost_table );
    for ( auto f : cfg.params.gamma )
      cfg.costs.at( f );
  }

  fs::path out_dir = o.out_dir ? fs::path( *o.out_dir ) : fs::path( cfg.output_dir );
  if ( !o.out_dir && out_dir.is_relative() )
    out_dir = fs::path( o.config ).parent_path() / out_dir;
  fs::create_directories( out_dir / "runs" );
  fs::create_directories( out_dir / "circuits" );

  if ( !o.quiet )
    std::cerr << "axcgp: " << cfg.grid.size() << " configurations x " << cfg.repeats << " repeats, budget "
              << cfg.budget.max_evaluations << " evaluations\n";

  auto const entries = run_matrix( cfg.base_search(), cfg.grid, cfg.repeats, o.workers );

  std::vector<results_row> rows;
  int failures = 0;
  for ( auto const& e : entries )
  {
    auto const stem = e.config_name + "_r" + std::to_string( e.repeat );
    if ( !e.result )
    {
      ++failures;
      std::cerr << "axcgp: run " << stem << " (seed " << e.seed << ") failed: " << e.error << '\n';
      continue;
    }
    auto const& r = *e.result;
    auto const& cs = cfg.grid[e.config_index];
    rows.push_back( make_results_row( e.config_name, r, report_gauss( cs, cfg.report_gauss_sigma ) ) );

    write_file( out_dir / "runs" / ( stem + ".json" ), run_result_to_json( r, e.config_name, cfg.golden ).dump( 2 ) + "\n" );
    auto const nl = decode_active( r.best_genome );
    write_file( out_dir / "circuits" / ( stem + ".v" ), export_verilog( nl, "axc_" + stem ) );
    write_file( out_dir / "circuits" / ( stem + ".genome.json" ),
                genome_to_json( r.best_genome, cfg.golden ).dump( 2 ) + "\n" );
    if ( !o.quiet )
      std::cerr << "axcgp: " << stem << " seed " << r.seed << " relative power " << format_real( r.relative_power() )
                << '\n';
  }

  std::ostringstream csv;
  write_results_csv( csv, rows, o.timestamp ? std::optional<std::string>( utc_timestamp() ) : std::nullopt );
  write_file( out_dir / "results.csv", csv.str() );
  if ( !o.quiet )
    std::cerr << "axcgp: wrote " << ( out_dir / "results.csv" ).string() << '\n';
  return failures == 0 ? exit_ok : exit_run_failed;
}

int cmd_eval( std::string const& genome_path, std::optional<std::string> const& golden_opt,
              std::optional<std::string> const& cost_path )
{
  auto file = parse_genome_text( read_text_file( genome_path ), genome_path );
  std::optional<golden_spec> golden = file.golden;
  if ( golden_opt )
    golden = parse_golden_option( *golden_opt );
  if ( !golden )
    throw format_error( genome_path + ": no golden reference in file; pass --golden KIND:WIDTH" );
  auto const& g = file.circuit;
  if ( g.params().num_inputs != golden->num_inputs() || g.params().num_outputs != golden->num_outputs() )
    throw format_error( genome_path + ": circuit interface " + std::to_string( g.params().num_inputs ) + "/" +
                        std::to_string( g.params().num_outputs ) + " does not match " + to_string( golden->kind ) +
                        " width " + std::to_string( golden->width ) );
  auto const costs = cost_path ? load_cost_table( *cost_path ) : default_cost_table();

  auto const planes = build_input_planes( g.params().num_inputs );
  auto const golden_nl = golden_netlist( *golden );
  auto const ref = extract_output_ints( simulate( golden_nl, planes ), golden->num_outputs() );
  auto const cand = extract_output_ints( simulate( g, planes ), g.params().num_outputs );
  auto const profile = error_profile_of( ref, cand, true );

  auto const nl = decode_active( g );
  json gates = json::object();
  for ( auto const& [f, n] : count_gates( nl ) )
  {
    if ( n > 0u )
      gates[std::string( gate_name( f ) )] = n;
  }
  json out;
  out["golden"] = golden_to_json( *golden );
  out["active_gates"] = nl.gates.size();
  out["gates"] = std::move( gates );
  out["cost"] = power_estimate( nl, costs );
  out["golden_cost"] = power_estimate( golden_nl, costs );
  out["relative_power"] = relative_power( nl, golden_nl, costs );
  out["profile"] = profile_to_json( profile );
  std::cout << out.dump( 2 ) << '\n';
  return exit_ok;
}

int cmd_export( std::string const& genome_path, std::string const& module, std::optional<std::string> const& out_path )
{
  auto const file = parse_genome_text( read_text_file( genome_path ), genome_path );
  auto const text = export_verilog( decode_active( file.circuit ), module );
  if ( out_path )
    write_file( *out_path, text );
  else
    std::cout << text;
  return exit_ok;
}

std::string csv_real( double v )
{
  return std::isnan( v ) ? std::string( "nan" ) : format_real( v );
}

int cmd_analyze( std::string const& results_path, std::string const& mode, std::optional<std::string> const& out_dir_opt,
                 bool svg )
{
  std::ifstream in( results_path, std::ios::binary );
  if ( !in )
    throw std::system_error( errno, std::generic_category(), "cannot open " + results_path );
  std::vector<results_row> rows;
  try
  {
    rows = read_results_csv( in );
  }
  catch ( format_error const& e )
  {
    throw format_error( results_path + ": " + e.what() );
  }
  if ( rows.empty() )
    throw format_error( results_path + ": no result rows" );

  fs::path const out_dir = out_dir_opt ? fs::path( *out_dir_opt ) : fs::path( results_path ).parent_path();
  if ( !out_dir.empty() )
    fs::create_directories( out_dir );

  std::vector<pareto_point> points;
  for ( auto const& r : rows )
    points.push_back( to_pareto_point( r ) );

  if ( mode == "pareto" )
  {
    for ( auto axis : all_error_axes )
    {
      auto const front = pareto_front( points, axis );
      std::ostringstream os;
      os << "id,config,relative_power," << to_string( axis ) << '\n';
      for ( auto const& p : front )
        os << p.id << ',' << p.config << ',' << format_real( p.relative_power ) << ',' << format_real( p.error( axis ) )
           << '\n';
      auto const name = "pareto_" + to_string( axis );
      write_file( out_dir / ( name + ".csv" ), os.str() );
      if ( svg )
        write_file( out_dir / ( name + ".svg" ),
                    tradeoff_svg( points, front, axis, "relative power vs " + to_string( axis ) ) );
      std::cout << to_string( axis ) << ": " << front.size() << " of " << points.size() << " points on the front\n";
    }
    return exit_ok;
  }

  if ( mode == "correlation" )
  {
    std::map<error_axis, std::vector<double>> series;
    for ( auto axis : all_error_axes )
      for ( auto const& p : points )
        series[axis].push_back( p.error( axis ) );
    std::ostringstream os;
    os << "metric";
    for ( auto axis : all_error_axes )
      os << ',' << to_string( axis );
    os << '\n';
    for ( auto a : all_error_axes )
    {
      os << to_string( a );
      for ( auto b : all_error_axes )
      {
        double v = std::nan( "" );
        try
        {
          v = std::abs( pearson( series[a], series[b] ) );
        }
        catch ( std::domain_error const& )
        {
        }
        os << ',' << csv_real( v );
      }
      os << '\n';
    }
    write_file( out_dir / "correlation.csv", os.str() );
    std::cout << os.str();
    return exit_ok;
  }

  if ( mode == "significance" )
  {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> by_config;
    for ( auto const& p : points )
    {
      if ( !by_config.count( p.config ) )
        order.push_back( p.config );
      by_config[p.config].push_back( p.relative_power );
    }
    std::ostringstream os;
    os << "config_a,config_b,n_a,n_b,median_a,median_b,u_a,z,p,approximate\n";
    for ( std::size_t i = 0; i < order.size(); ++i )
    {
      for ( std::size_t j = i + 1; j < order.size(); ++j )
      {
        auto const& xa = by_config[order[i]];
        auto const& xb = by_config[order[j]];
        auto const mw = mann_whitney_u( xa, xb );
        os << order[i] << ',' << order[j] << ',' << xa.size() << ',' << xb.size() << ','
           << format_real( median( xa ) ) << ',' << format_real( median( xb ) ) << ',' << format_real( mw.u_x ) << ','
           << csv_real( mw.z ) << ',' << csv_real( mw.p ) << ',' << ( mw.approximate ? 1 : 0 ) << '\n';
      }
    }
    write_file( out_dir / "significance.csv", os.str() );
    std::cout << os.str();
    return exit_ok;
  }

  throw format_error( "unknown analysis mode '" + mode + "'" );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Approximate arithmetic circuit synthesis with Cartesian genetic programming" };
  app.require_subcommand( 1 );

  run_options ro;
  auto* run = app.add_subcommand( "run", "Run the configured search matrix" );
  run->add_option( "--config", ro.config, "Experiment configuration (JSON)" )->required();
  run->add_option( "--out-dir", ro.out_dir, "Output directory (overrides the configuration)" );
  run->add_option( "--workers", ro.workers, "Worker threads, 0 = hardware concurrency" );
  run->add_option( "--seed", ro.seed, "Base seed" );
  run->add_option( "--budget-evals", ro.budget_evals, "Offspring evaluations per run" );
  run->add_option( "--wall-clock-secs", ro.wall_clock_secs, "Per-run wall-clock limit, 0 = none" );
  run->add_option( "--cost-table", ro.cost_table, "Gate weight table (JSON)" );
  run->add_flag( "--timestamp", ro.timestamp, "Add a generation timestamp comment to results.csv" );
  run->add_flag( "--quiet", ro.quiet, "No progress output" );

  std::string genome_path;
  std::optional<std::string> golden_opt, eval_costs;
  auto* eval = app.add_subcommand( "eval", "Print the error profile and relative power of a genome" );
  eval->add_option( "genome", genome_path, "Genome file" )->required();
  eval->add_option( "--golden", golden_opt, "Reference, e.g. multiplier:4 (default: taken from the file)" );
  eval->add_option( "--cost-table", eval_costs, "Gate weight table (JSON)" );

  std::string export_path, module = "axc";
  std::optional<std::string> export_out;
  auto* exp = app.add_subcommand( "export-verilog", "Write the active circuit as structural Verilog" );
  exp->add_option( "--genome", export_path, "Genome file" )->required();
  exp->add_option( "--module", module, "Module name" );
  exp->add_option( "-o,--output", export_out, "Output file (default: stdout)" );

  std::string results_path, mode;
  std::optional<std::string> analyze_out;
  bool svg = false;
  auto* an = app.add_subcommand( "analyze", "Pareto fronts, metric correlation or significance tests" );
  an->add_option( "--results", results_path, "results.csv" )->required();
  an->add_option( "--mode", mode, "pareto | correlation | significance" )
      ->required()
      ->check( CLI::IsMember( { "pareto", "correlation", "significance" } ) );
  an->add_option( "--out-dir", analyze_out, "Output directory (default: next to the results)" );
  an->add_flag( "--svg", svg, "Also write SVG trade-off plots (pareto mode)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    return app.exit( e ) == 0 ? exit_ok : exit_bad_input;
  }

  try
  {
    if ( *run )
      return cmd_run( ro );
    if ( *eval )
      return cmd_eval( genome_path, golden_opt, eval_costs );
    if ( *exp )
      return cmd_export( export_path, module, export_out );
    if ( *an )
      return cmd_analyze( results_path, mode, analyze_out, svg );
  }
  catch ( std::exception const& e )
  {
    std::cerr << "axcgp: error: " << e.what() << '\n';
    return exit_bad_input;
  }
  return exit_ok;
}
