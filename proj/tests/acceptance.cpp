// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// non-zero if any criterion fails.
#include <axcgp/axcgp.hpp>
#include <axcgp/io/results_csv.hpp>
#include <support/reference.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

using namespace axcgp;

namespace
{

using clock_type = std::chrono::steady_clock;

struct verdict
{
  bool pass;
  std::string detail;
};

int failures = 0;

void report( int id, std::string const& title, std::function<verdict()> const& check )
{
  auto const t0 = clock_type::now();
  verdict v{ false, "" };
  try
  {
    v = check();
  }
  catch ( std::exception const& e )
  {
    v = { false, std::string( "exception: " ) + e.what() };
  }
  auto const secs = std::chrono::duration<double>( clock_type::now() - t0 ).count();
  if ( !v.pass )
    ++failures;
  std::printf( "%s [%d] %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str(), secs );
  std::fflush( stdout );
}

std::string fmt( double v, int digits = 4 )
{
  std::ostringstream os;
  os.precision( digits );
  os << v;
  return os.str();
}

golden_spec const mul4{ golden_kind::multiplier, 4 };
constexpr std::uint32_t mul4_nodes = 120;

std::vector<std::uint64_t> reference_table( golden_spec const& spec )
{
  std::vector<std::uint64_t> t( std::size_t{ 1 } << spec.num_inputs() );
  for ( std::size_t x = 0; x < t.size(); ++x )
    t[x] = golden_reference_value( spec, x );
  return t;
}

// Independent re-evaluation of a returned circuit against one constraint.
bool naive_satisfies( ref::naive_profile const& p, constraint const& c, double range )
{
  switch ( c.kind )
  {
  case metric::wce: return 100.0 * static_cast<double>( p.wce ) / range <= c.threshold;
  case metric::mae: return 100.0 * p.mae / range <= c.threshold + 1e-9;
  case metric::er: return 100.0 * p.er <= c.threshold + 1e-9;
  case metric::mre: return 100.0 * p.mre <= c.threshold + 1e-9;
  case metric::acc0: return p.acc0 == 1;
  case metric::avg: return 100.0 * std::fabs( p.avg ) / range <= c.threshold + 1e-9;
  case metric::gauss: break;
  }
  throw std::logic_error( "naive_satisfies: unsupported metric" );
}

struct lattice_counter
{
  std::mutex m;
  std::uint64_t evaluations = 0;
  std::uint64_t violations = 0;

  evaluation_observer observer()
  {
    return [this]( genome const&, evaluation const& e ) {
      auto const& p = e.profile;
      bool ok = p.mae() <= static_cast<double>( p.wce ) && std::fabs( p.avg() ) <= p.mae() &&
                ( p.er() == 0.0 ) == ( p.wce == 0u );
      std::lock_guard lock( m );
      ++evaluations;
      if ( !ok )
        ++violations;
    };
  }
};

lattice_counter lattice;

// ---------------------------------------------------------------------------

verdict golden_exactness()
{
  golden_spec const spec{ golden_kind::multiplier, 8 };
  auto const t0 = clock_type::now();
  auto const nl = golden_netlist( spec );
  auto const out = extract_output_ints( simulate( nl, build_input_planes( 16 ) ), 16 );
  std::uint64_t mismatches = 0;
  for ( std::uint64_t a = 0; a < 256; ++a )
    for ( std::uint64_t b = 0; b < 256; ++b )
      mismatches += out.values[a | ( b << 8 )] != a * b;
  auto const secs = std::chrono::duration<double>( clock_type::now() - t0 ).count();
  return { mismatches == 0 && secs < 1.0 && nl.gates.size() == 320u,
           std::to_string( nl.gates.size() ) + " gates, " + std::to_string( mismatches ) +
               " mismatches over 65536 inputs, check took " + fmt( secs * 1000.0 ) + " ms" };
}

verdict simulator_equivalence()
{
  auto rng = make_rng( 0x51u );
  auto const planes = build_input_planes( 8 );
  bit_simulator sim( planes );
  int mismatching = 0, genomes = 0;
  for ( ; genomes < 200; ++genomes )
  {
    auto const params = ref::random_params( rng, 8, 16, 200 );
    auto const g = random_genome( params, rng );
    if ( !validate_genome( g ).ok() )
      return { false, "random genome failed validation" };
    auto const packed = extract_output_ints( sim.run( g ), params->num_outputs );
    if ( packed.values != ref::truth_table( g ) )
      ++mismatching;
  }
  return { mismatching == 0, std::to_string( genomes ) + " random genomes with 8 inputs, " +
                                 std::to_string( mismatching ) + " differ from per-input evaluation" };
}

verdict metric_equivalence()
{
  // fixed case: 2x2 multiplier with the product LSB tied to 0
  golden_spec const mul2{ golden_kind::multiplier, 2 };
  auto const planes2 = build_input_planes( 4 );
  auto const g2 = extract_output_ints( simulate( golden_netlist( mul2 ), planes2 ), 4 );
  auto const t2 = extract_output_ints( simulate( ref::truncated_2x2_multiplier(), planes2 ), 4 );
  auto const fixed = error_profile_of( g2, t2 );
  bool const fixed_ok = fixed.wce == 1u && fixed.mae() == 0.25 && fixed.er() == 0.25 &&
                        std::fabs( fixed.mre - 16.0 / 144.0 ) <= 1e-12 && fixed.acc0 && fixed.avg() == 0.25;

  auto rng = make_rng( 0x3e7u );
  int pairs = 0, bad = 0;
  for ( std::uint32_t n = 2; n <= 8; ++n )
  {
    auto const planes = build_input_planes( n );
    bit_simulator sim( planes );
    for ( int trial = 0; trial < 60; ++trial, ++pairs )
    {
      auto const params = ref::random_params( rng, n, 12, 60 );
      auto const a = random_genome( params, rng );
      auto const b = trial % 2 ? random_genome( params, rng ) : mutate( a, 2, rng );
      auto const ia = extract_output_ints( sim.run( a ), params->num_outputs );
      auto const ib = extract_output_ints( sim.run( b ), params->num_outputs );
      auto const p = error_profile_of( ia, ib );
      auto const q = ref::profile( ref::truth_table( a ), ref::truth_table( b ) );
      auto close = []( double x, double y ) { return std::fabs( x - y ) <= 1e-12 * std::max( 1.0, std::fabs( y ) ); };
      bool const ok = p.wce == q.wce && p.acc0 == ( q.acc0 == 1 ) && p.histogram == q.histogram &&
                      close( p.mae(), q.mae ) && close( p.er(), q.er ) && close( p.mre, q.mre ) &&
                      close( p.avg(), q.avg );
      bad += ok ? 0 : 1;
    }
  }
  return { fixed_ok && bad == 0,
           std::string( "fixed 2x2 truncated case " ) + ( fixed_ok ? "matches" : "DIFFERS" ) + " (wce=" +
               std::to_string( fixed.wce ) + " mae=" + fmt( fixed.mae() ) + " er=" + fmt( fixed.er() ) +
               " mre=" + fmt( fixed.mre ) + " acc0=" + std::to_string( fixed.acc0 ) + " avg=" + fmt( fixed.avg() ) +
               "); " + std::to_string( pairs ) + " random pairs, " + std::to_string( bad ) + " disagree" };
}

verdict search_efficacy()
{
  search_config cfg;
  cfg.golden = mul4;
  cfg.params = golden_params( mul4, mul4_nodes );
  cfg.constraints = { "wce5", { { metric::wce, 5.0 } } };
  cfg.budget.max_evaluations = 100000;

  auto const reference = reference_table( mul4 );
  int cheaper = 0, verified = 0;
  std::ostringstream powers;
  for ( std::uint64_t seed = 1; seed <= 10; ++seed )
  {
    cfg.seed = seed;
    auto const r = evolve( cfg, lattice.observer() );
    auto const q = ref::profile( reference, ref::truth_table( r.best_genome ) );
    bool const ok = validate_genome( r.best_genome ).ok() && 100.0 * static_cast<double>( q.wce ) / 256.0 <= 5.0 &&
                    r.evaluations_used == 100000u;
    verified += ok ? 1 : 0;
    cheaper += r.relative_power() < 0.9 ? 1 : 0;
    powers << ( seed > 1 ? " " : "" ) << fmt( r.relative_power(), 3 );
  }
  return { cheaper >= 9 && verified == 10, std::to_string( cheaper ) + "/10 runs below 0.9 relative power, " +
                                               std::to_string( verified ) + "/10 re-verified feasible; powers " +
                                               powers.str() };
}

verdict lattice_invariants()
{
  std::lock_guard lock( lattice.m );
  return { lattice.evaluations >= 10000u && lattice.violations == 0u,
           std::to_string( lattice.evaluations ) + " candidate evaluations observed during search, " +
               std::to_string( lattice.violations ) + " violations" };
}

// thresholds (relative percent) for the two levels of the constraint matrix
struct level
{
  std::string tag;
  double mae, wce, er, avg;
};
std::vector<level> const levels = { { "t", 0.5, 2.0, 10.0, 0.5 }, { "l", 2.0, 8.0, 40.0, 2.0 } };

std::vector<constraint_set> matrix_grid()
{
  std::vector<constraint_set> grid;
  for ( auto const& lv : levels )
  {
    grid.push_back( { "mae_" + lv.tag, { { metric::mae, lv.mae } } } );
    grid.push_back( { "wce_" + lv.tag, { { metric::wce, lv.wce } } } );
    grid.push_back( { "er_" + lv.tag, { { metric::er, lv.er } } } );
    grid.push_back( { "mae+er_" + lv.tag, { { metric::mae, lv.mae }, { metric::er, lv.er } } } );
    grid.push_back( { "wce+er_" + lv.tag, { { metric::wce, lv.wce }, { metric::er, lv.er } } } );
    grid.push_back( { "wce+avg_" + lv.tag, { { metric::wce, lv.wce }, { metric::avg, lv.avg } } } );
  }
  return grid;
}

search_config matrix_base( std::uint64_t budget )
{
  search_config cfg;
  cfg.golden = mul4;
  cfg.params = golden_params( mul4, mul4_nodes );
  cfg.budget.max_evaluations = budget;
  cfg.seed = 1000;
  return cfg;
}

std::vector<matrix_entry> matrix_entries;

verdict combined_soundness()
{
  auto const grid = matrix_grid();
  matrix_entries = run_matrix( matrix_base( 100000 ), grid, 3, 0, lattice.observer() );
  auto const reference = reference_table( mul4 );
  int completed = 0, violations = 0;
  for ( auto const& e : matrix_entries )
  {
    if ( !e.result )
      continue;
    ++completed;
    auto const q = ref::profile( reference, ref::truth_table( e.result->best_genome ) );
    for ( auto const& c : grid[e.config_index].items )
      violations += naive_satisfies( q, c, 256.0 ) ? 0 : 1;
    violations += validate_genome( e.result->best_genome ).ok() ? 0 : 1;
  }
  return { completed == static_cast<int>( matrix_entries.size() ) && violations == 0,
           std::to_string( grid.size() ) + " constraint sets x 3 repeats: " + std::to_string( completed ) + "/" +
               std::to_string( matrix_entries.size() ) + " runs completed, " + std::to_string( violations ) +
               " constraint violations under re-evaluation" };
}

verdict er_direction()
{
  std::map<std::string, std::vector<double>> power;
  for ( auto const& e : matrix_entries )
    if ( e.result )
      power[e.config_name].push_back( e.result->relative_power() );

  std::vector<double> with_er, without_er;
  std::ostringstream detail;
  bool all_pairs = true;
  for ( auto const& lv : levels )
  {
    for ( std::string base : { "mae", "wce" } )
    {
      auto const& plain = power.at( base + "_" + lv.tag );
      auto const& combined = power.at( base + "+er_" + lv.tag );
      with_er.insert( with_er.end(), combined.begin(), combined.end() );
      without_er.insert( without_er.end(), plain.begin(), plain.end() );
      auto const mc = median( combined ), mp = median( plain );
      all_pairs &= mc >= mp;
      detail << base << "_" << lv.tag << " " << fmt( mp, 3 ) << " vs +er " << fmt( mc, 3 ) << "; ";
    }
  }
  auto const m_with = median( with_er ), m_without = median( without_er );
  detail << "pooled median " << fmt( m_without, 3 ) << " without ER vs " << fmt( m_with, 3 ) << " with ER";
  if ( !all_pairs )
    detail << " (not every matched pair follows the direction)";
  return { m_with >= m_without, detail.str() };
}

verdict analysis_correctness()
{
  auto rng = make_rng( 0x8a8u );
  std::vector<pareto_point> pts( 1000 );
  for ( std::size_t i = 0; i < pts.size(); ++i )
  {
    auto& p = pts[i];
    p.id = std::to_string( i );
    // coarse grid so that ties and duplicates occur
    p.relative_power = static_cast<double>( uniform_below( rng, 50 ) ) / 50.0;
    p.wce = static_cast<double>( uniform_below( rng, 40 ) );
    p.mae = static_cast<double>( uniform_below( rng, 1000 ) ) / 7.0;
    p.er = static_cast<double>( uniform_below( rng, 100 ) );
    p.mre = static_cast<double>( uniform_below( rng, 30 ) );
    p.avg = static_cast<double>( uniform_below( rng, 30 ) ) / 3.0;
    p.stddev = static_cast<double>( uniform_below( rng, 500 ) ) / 11.0;
  }
  int front_mismatch = 0;
  std::size_t front_sizes = 0;
  for ( auto axis : all_error_axes )
  {
    std::vector<std::string> expect;
    for ( auto const& p : pts )
    {
      bool dominated = false;
      for ( auto const& q : pts )
        dominated |= q.relative_power <= p.relative_power && q.error( axis ) <= p.error( axis ) &&
                     ( q.relative_power < p.relative_power || q.error( axis ) < p.error( axis ) );
      if ( !dominated )
        expect.push_back( p.id );
    }
    std::vector<std::string> got;
    for ( auto const& p : pareto_front( pts, axis ) )
      got.push_back( p.id );
    front_mismatch += got == expect ? 0 : 1;
    front_sizes += got.size();
  }

  double worst_pearson = 0.0;
  for ( int trial = 0; trial < 100; ++trial )
  {
    std::vector<double> xs, up, down;
    auto const slope = 0.1 + static_cast<double>( uniform_below( rng, 1000 ) ) / 37.0;
    for ( int i = 0; i < 50; ++i )
    {
      auto const x = static_cast<double>( uniform_below( rng, 100000 ) ) / 113.0;
      xs.push_back( x );
      up.push_back( 3.0 + slope * x );
      down.push_back( 5.0 - slope * x );
    }
    worst_pearson = std::max( worst_pearson, std::fabs( pearson( xs, up ) - 1.0 ) );
    worst_pearson = std::max( worst_pearson, std::fabs( pearson( xs, down ) + 1.0 ) );
  }

  int u_bad = 0;
  double min_p_identical = 1.0;
  for ( int trial = 0; trial < 200; ++trial )
  {
    std::vector<double> xs, ys;
    for ( auto n = 1 + uniform_below( rng, 30 ); n > 0; --n )
      xs.push_back( static_cast<double>( uniform_below( rng, 10 ) ) );
    for ( auto n = 1 + uniform_below( rng, 30 ); n > 0; --n )
      ys.push_back( static_cast<double>( uniform_below( rng, 10 ) ) );
    auto const r = mann_whitney_u( xs, ys );
    u_bad += r.u_x + r.u_y == static_cast<double>( xs.size() * ys.size() ) ? 0 : 1;
    min_p_identical = std::min( min_p_identical, mann_whitney_u( xs, xs ).p );
  }

  bool const ok = front_mismatch == 0 && worst_pearson <= 1e-12 && u_bad == 0 && min_p_identical >= 1.0 - 1e-9;
  return { ok, "Pareto fronts on 1000 points, " + std::to_string( front_mismatch ) + "/6 axes differ from the O(n^2) oracle (" +
                   std::to_string( front_sizes ) + " front points); Pearson max deviation " + fmt( worst_pearson, 3 ) +
                   "; U_x+U_y mismatches " + std::to_string( u_bad ) + "; min p on identical samples " +
                   fmt( min_p_identical, 6 ) };
}

std::string matrix_csv( unsigned workers )
{
  auto const grid = matrix_grid();
  auto const entries = run_matrix( matrix_base( 3000 ), grid, 3, workers );
  std::vector<results_row> rows;
  for ( auto const& e : entries )
  {
    if ( !e.result )
      throw std::runtime_error( "run " + e.config_name + " failed: " + e.error );
    rows.push_back( make_results_row( e.config_name, *e.result, report_gauss( grid[e.config_index], 4.0 ) ) );
  }
  std::ostringstream os;
  write_results_csv( os, rows );
  return os.str();
}

verdict determinism()
{
  auto const a = matrix_csv( 1 );
  auto const b = matrix_csv( 1 );
  auto const c = matrix_csv( 3 );

  search_config cfg = matrix_base( 20000 );
  cfg.constraints = { "wce5", { { metric::wce, 5.0 } } };
  cfg.seed = 77;
  auto const r1 = evolve( cfg ), r2 = evolve( cfg );
  bool const single = r1.best_genome == r2.best_genome && r1.trajectory == r2.trajectory &&
                      r1.best_cost == r2.best_cost;
  return { a == b && a == c && single, "matrix CSV (" + std::to_string( a.size() ) + " bytes) " +
                                           ( a == b ? "identical" : "DIFFERS" ) + " on rerun, " +
                                           ( a == c ? "identical" : "DIFFERS" ) + " with 3 workers; single run " +
                                           ( single ? "identical" : "DIFFERS" ) };
}

verdict gauss_sanity()
{
  int exact_fail = 0, spike_pass = 0;
  double worst_bound = 0.0;
  for ( double sigma : { 1.0, 1.5, 2.0, 3.7, 8.0, 10.0, 25.0, 100.0 } )
  {
    error_profile exact;
    exact.input_bits = 8;
    exact.output_bits = 8;
    exact.has_histogram = true;
    exact.histogram = { { 0, 256 } };
    exact_fail += gauss_satisfied( exact, { sigma } ) ? 0 : 1;

    auto const e = static_cast<std::int64_t>( std::llround( 10.0 * sigma ) );
    auto spike = exact;
    spike.histogram = { { 0, 255 }, { e, 1 } };
    spike.error_count = 1;
    spike.wce = static_cast<std::uint64_t>( e );
    spike_pass += gauss_satisfied( spike, { sigma } ) ? 1 : 0;

    // Tail bound: the envelope amplitude is at most 2^n (its normalizer is at
    // least 1), and every integer in the spike's bin is at least (10 - 0.5)σ - 1
    // away from zero, so each envelope value is below this bound while the
    // spike contributes an average of at least 1 / (σ + 1) per integer.
    auto const d = ( 10.0 - 0.5 ) * sigma - 1.0;
    auto const bound = 256.0 * std::exp( -d * d / ( 2.0 * sigma * sigma ) );
    worst_bound = std::max( worst_bound, bound * ( sigma + 1.0 ) );
  }
  return { exact_fail == 0 && spike_pass == 0 && worst_bound < 1.0,
           "exact circuit rejected for " + std::to_string( exact_fail ) + "/8 sigmas; spike at 10 sigma accepted for " +
               std::to_string( spike_pass ) + "/8 sigmas; tail-bound ratio " + fmt( worst_bound, 3 ) };
}

} // namespace

int main()
{
  report( 1, "golden 8x8 multiplier exactness", golden_exactness );
  report( 2, "packed simulator vs per-input evaluation", simulator_equivalence );
  report( 3, "error metrics vs direct definitions", metric_equivalence );
  // 4 is checked on the candidates evaluated by the searches of 5 and 6
  report( 5, "4x4 multiplier, WCE <= 5%, 10 seeds x 1e5 evaluations", search_efficacy );
  report( 6, "combined-constraint matrix soundness", combined_soundness );
  report( 4, "metric lattice invariants on evaluated candidates", lattice_invariants );
  report( 7, "ER constraint raises median relative power", er_direction );
  report( 8, "Pareto, Pearson and Mann-Whitney checks", analysis_correctness );
  report( 9, "byte-identical results on rerun", determinism );
  report( 10, "Gaussian envelope sanity", gauss_sanity );
  std::printf( "%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures );
  return failures ? 1 : 0;
}
