#include <axcgp/axcgp.hpp>
#include <axcgp/io/experiment.hpp>
#include <axcgp/io/results_csv.hpp>
#include <axcgp/io/serialization.hpp>
#include <support/reference.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace axcgp;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace
{

fs::path const tmp = AXCGP_TEST_TMPDIR;

struct outcome
{
  int code;
  std::string out;
  std::string err;
};

outcome run_cli( std::string const& args )
{
  fs::create_directories( tmp );
  auto const out = tmp / "stdout.txt", err = tmp / "stderr.txt";
  auto const cmd = std::string( AXCGP_CLI_PATH ) + " " + args + " >" + out.string() + " 2>" + err.string();
  auto const status = std::system( cmd.c_str() );
  return { WIFEXITED( status ) ? WEXITSTATUS( status ) : -1, read_text_file( out ), read_text_file( err ) };
}

void write( fs::path const& p, std::string const& text )
{
  fs::create_directories( p.parent_path() );
  std::ofstream( p ) << text;
}

std::string const small_config = R"({
  "golden": { "kind": "multiplier", "width": 2 },
  "cgp": { "nodes": 16 },
  "search": { "budget_evals": 300, "repeats": 2, "seed": 3 },
  "constraint_grid": [
    { "name": "wce10", "constraints": [ { "metric": "WCE", "threshold": 10 } ] },
    { "name": "mae5_er", "constraints": [ { "metric": "MAE", "threshold": 5 }, { "metric": "ER", "threshold": 40 } ] }
  ],
  "report_gauss_sigma": 2
})";

} // namespace

TEST_CASE( "run writes results, runs and circuits" )
{
  auto const dir = tmp / "run1";
  fs::remove_all( dir );
  write( tmp / "small.json", small_config );
  auto const r = run_cli( "run --config " + ( tmp / "small.json" ).string() + " --out-dir " + dir.string() );
  INFO( r.err );
  REQUIRE( r.code == 0 );

  std::ifstream csv( dir / "results.csv" );
  auto const rows = read_results_csv( csv );
  REQUIRE( rows.size() == 4u );
  CHECK( rows[0].config == "wce10" );
  CHECK( rows[0].seed == 3u );
  CHECK( rows[3].seed == 6u );
  CHECK( rows[0].gauss_ok != "na" );
  for ( auto const& row : rows )
    CHECK( row.evaluations == 300u );

  for ( std::string stem : { "wce10_r0", "wce10_r1", "mae5_er_r0", "mae5_er_r1" } )
  {
    INFO( stem );
    REQUIRE( fs::exists( dir / "runs" / ( stem + ".json" ) ) );
    auto const file = parse_genome_text( read_text_file( dir / "circuits" / ( stem + ".genome.json" ) ), stem );
    REQUIRE( file.golden );
    ref::verilog_model const v( read_text_file( dir / "circuits" / ( stem + ".v" ) ) );
    for ( std::uint64_t x = 0; x < 16; ++x )
      CHECK( v.eval( x ) == ref::eval_genome( file.circuit, x ) );
    auto const run = json::parse( read_text_file( dir / "runs" / ( stem + ".json" ) ) );
    CHECK( run.at( "genome" ).at( "genes" ) == genome_to_json( file.circuit ).at( "genes" ) );
  }
}

TEST_CASE( "run is reproducible and flags override the file" )
{
  write( tmp / "small.json", small_config );
  auto const cfg = ( tmp / "small.json" ).string();
  auto const a = run_cli( "run --quiet --workers 2 --config " + cfg + " --out-dir " + ( tmp / "rep_a" ).string() );
  auto const b = run_cli( "run --quiet --workers 1 --config " + cfg + " --out-dir " + ( tmp / "rep_b" ).string() );
  REQUIRE( a.code == 0 );
  REQUIRE( b.code == 0 );
  CHECK( read_text_file( tmp / "rep_a" / "results.csv" ) == read_text_file( tmp / "rep_b" / "results.csv" ) );

  auto const c = run_cli( "run --quiet --seed 100 --budget-evals 0 --config " + cfg + " --out-dir " +
                          ( tmp / "rep_c" ).string() );
  REQUIRE( c.code == 0 );
  std::ifstream csv( tmp / "rep_c" / "results.csv" );
  auto const rows = read_results_csv( csv );
  CHECK( rows[0].seed == 100u );
  CHECK( rows[0].relative_power == 1.0 );
  CHECK( rows[0].evaluations == 0u );
}

TEST_CASE( "run reports invalid configurations" )
{
  auto bad = small_config;
  bad.replace( bad.find( "\"nodes\": 16" ), 11, "\"nodez\": 16" );
  write( tmp / "bad.json", bad );
  auto const r = run_cli( "run --config " + ( tmp / "bad.json" ).string() + " --out-dir " + ( tmp / "bad" ).string() );
  CHECK( r.code != 0 );
  CHECK_THAT( r.err, ContainsSubstring( "/cgp/nodes" ) );

  auto const m = run_cli( "run --config " + ( tmp / "nope.json" ).string() );
  CHECK( m.code != 0 );
  CHECK_THAT( m.err, ContainsSubstring( "nope.json" ) );

  write( tmp / "costs.json", R"({"AND": 1})" );
  auto const c = run_cli( "run --config " + ( tmp / "small.json" ).string() + " --cost-table " +
                          ( tmp / "costs.json" ).string() + " --out-dir " + ( tmp / "bad" ).string() );
  CHECK( c.code != 0 );
  CHECK_THAT( c.err, ContainsSubstring( "no weight" ) );
}

TEST_CASE( "eval and export-verilog" )
{
  golden_spec const spec{ golden_kind::multiplier, 2 };
  auto const g = generate_golden( spec, golden_params( spec, 10 ) );
  write( tmp / "exact.genome.json", genome_to_json( g, spec ).dump( 2 ) );
  write( tmp / "bare.genome.json", genome_to_json( g ).dump( 2 ) );

  auto const e = run_cli( "eval " + ( tmp / "exact.genome.json" ).string() );
  REQUIRE( e.code == 0 );
  auto const j = json::parse( e.out );
  CHECK( j.at( "relative_power" ) == 1.0 );
  CHECK( j.at( "profile" ).at( "wce" ) == 0 );
  CHECK( j.at( "active_gates" ) == 8 );

  auto const bare = run_cli( "eval " + ( tmp / "bare.genome.json" ).string() );
  CHECK( bare.code != 0 );
  CHECK_THAT( bare.err, ContainsSubstring( "--golden" ) );
  auto const with = run_cli( "eval --golden multiplier:2 " + ( tmp / "bare.genome.json" ).string() );
  CHECK( with.code == 0 );
  auto const mismatch = run_cli( "eval --golden adder:3 " + ( tmp / "bare.genome.json" ).string() );
  CHECK( mismatch.code != 0 );

  auto const missing = run_cli( "eval " + ( tmp / "missing.genome.json" ).string() );
  CHECK( missing.code == 2 );
  CHECK_THAT( missing.err, ContainsSubstring( "missing.genome.json" ) );

  auto const v = run_cli( "export-verilog --genome " + ( tmp / "exact.genome.json" ).string() + " --module mul2 -o " +
                          ( tmp / "mul2.v" ).string() );
  REQUIRE( v.code == 0 );
  auto const text = read_text_file( tmp / "mul2.v" );
  CHECK_THAT( text, ContainsSubstring( "module mul2(" ) );
  ref::verilog_model const model( text );
  for ( std::uint64_t x = 0; x < 16; ++x )
    CHECK( model.eval( x ) == ( x & 3u ) * ( x >> 2 ) );
}

TEST_CASE( "analyze modes" )
{
  auto const dir = tmp / "an";
  fs::remove_all( dir );
  std::vector<results_row> rows;
  for ( int i = 0; i < 6; ++i )
    rows.push_back( { i < 3 ? "a" : "b", static_cast<std::uint64_t>( i ), 10, 0.3 + 0.1 * i, 1.0 * ( 6 - i ),
                      0.5 * ( 6 - i ), 10.0 + i % 2, 2.0, 0.1, 1, 0.5 * ( 6 - i ), "na" } );
  std::ostringstream os;
  write_results_csv( os, rows );
  write( dir / "results.csv", os.str() );
  auto const csv = ( dir / "results.csv" ).string();

  auto const p = run_cli( "analyze --results " + csv + " --mode pareto --svg" );
  REQUIRE( p.code == 0 );
  for ( std::string axis : { "wce", "mae", "er", "mre", "avg", "stddev" } )
  {
    CHECK( fs::exists( dir / ( "pareto_" + axis + ".csv" ) ) );
    CHECK( fs::exists( dir / ( "pareto_" + axis + ".svg" ) ) );
  }
  // every point trades power for WCE here, so all six are on the front
  auto const front = read_text_file( dir / "pareto_wce.csv" );
  CHECK( std::count( front.begin(), front.end(), '\n' ) == 7 );

  auto const c = run_cli( "analyze --results " + csv + " --mode correlation" );
  REQUIRE( c.code == 0 );
  CHECK_THAT( c.out, ContainsSubstring( "wce,1,1," ) );
  CHECK_THAT( c.out, ContainsSubstring( "nan" ) ); // MRE is constant

  auto const s = run_cli( "analyze --results " + csv + " --mode significance" );
  REQUIRE( s.code == 0 );
  CHECK_THAT( s.out, ContainsSubstring( "a,b,3,3," ) );

  write( dir / "broken.csv", "config,seed\na,1\n" );
  auto const b = run_cli( "analyze --results " + ( dir / "broken.csv" ).string() + " --mode pareto" );
  CHECK( b.code != 0 );
  CHECK_THAT( b.err, ContainsSubstring( "missing column" ) );

  auto const m = run_cli( "analyze --results " + csv + " --mode cluster" );
  CHECK( m.code != 0 );
}
