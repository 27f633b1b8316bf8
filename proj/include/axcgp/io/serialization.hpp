/*!
  \file serialization.hpp
  \brief JSON forms of genomes, error profiles, run results and cost tables

  Genome files (schema `axcgp-genome`, version 1):

      {
        "format": "axcgp-genome",
        "version": 1,
        "params": { "inputs": 8, "outputs": 8, "nodes": 120, "levels_back": 120,
                    "gamma": ["BUF", "INV", ...] },
        "golden": { "kind": "multiplier", "width": 4 },      // optional
        "genes": [ ... n_n * 3 + n_o integers ... ]
      }
*/
#pragma once

#include "../constraints.hpp"
#include "../cost.hpp"
#include "../golden.hpp"
#include "../metrics.hpp"
#include "../search.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace axcgp
{

using json = nlohmann::json;

inline constexpr std::string_view genome_format = "axcgp-genome";
inline constexpr int genome_format_version = 1;

/*! \brief Malformed input file; the message names the offending field or byte offset. */
class format_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Line and column (1-based) of a byte offset. */
inline std::pair<std::size_t, std::size_t> line_column( std::string_view text, std::size_t offset )
{
  std::size_t line = 1, col = 1;
  for ( std::size_t i = 0; i < offset && i < text.size(); ++i )
  {
    if ( text[i] == '\n' )
    {
      ++line;
      col = 1;
    }
    else
      ++col;
  }
  return { line, col };
}

inline json parse_json_text( std::string const& text, std::string const& source )
{
  try
  {
    return json::parse( text );
  }
  catch ( json::parse_error const& e )
  {
    auto const offset = e.byte > 0u ? e.byte - 1u : 0u;
    auto const [line, col] = line_column( text, offset );
    throw format_error( source + ":" + std::to_string( line ) + ":" + std::to_string( col ) + ": byte offset " +
                        std::to_string( offset ) + ": " + e.what() );
  }
}

/*! \brief Strict accessor for one JSON object: typed fields, path-qualified errors, unknown keys rejected. */
class object_reader
{
public:
  object_reader( json const& j, std::string path ) : j_( j ), path_( std::move( path ) )
  {
    if ( !j_.is_object() )
      fail( "", "expected an object" );
  }

  bool has( std::string const& key ) const { return j_.contains( key ); }

  json const& raw( std::string const& key )
  {
    if ( !j_.contains( key ) )
      fail( key, "missing required field" );
    seen_.insert( key );
    return j_.at( key );
  }

  std::uint64_t unsigned_integer( std::string const& key )
  {
    auto const& v = raw( key );
    if ( !v.is_number_unsigned() && !( v.is_number_integer() && v.get<std::int64_t>() >= 0 ) )
      fail( key, "expected a non-negative integer" );
    return v.get<std::uint64_t>();
  }

  std::uint64_t unsigned_integer( std::string const& key, std::uint64_t fallback )
  {
    return has( key ) ? unsigned_integer( key ) : fallback;
  }

  std::uint32_t uint32( std::string const& key )
  {
    auto const v = unsigned_integer( key );
    if ( v > 0xffffffffull )
      fail( key, "value too large" );
    return static_cast<std::uint32_t>( v );
  }

  std::uint32_t uint32( std::string const& key, std::uint32_t fallback ) { return has( key ) ? uint32( key ) : fallback; }

  double number( std::string const& key )
  {
    auto const& v = raw( key );
    if ( !v.is_number() )
      fail( key, "expected a number" );
    return v.get<double>();
  }

  double number( std::string const& key, double fallback ) { return has( key ) ? number( key ) : fallback; }

  std::string string( std::string const& key )
  {
    auto const& v = raw( key );
    if ( !v.is_string() )
      fail( key, "expected a string" );
    return v.get<std::string>();
  }

  std::string string( std::string const& key, std::string fallback ) { return has( key ) ? string( key ) : fallback; }

  std::string child_path( std::string const& key ) const { return path_ + "/" + key; }

  /*! \brief Rejects keys nobody asked for. */
  void finish() const
  {
    for ( auto it = j_.begin(); it != j_.end(); ++it )
    {
      if ( !seen_.count( it.key() ) )
        throw format_error( path_ + "/" + it.key() + ": unknown field" );
    }
  }

  [[noreturn]] void fail( std::string const& key, std::string const& what ) const
  {
    throw format_error( ( key.empty() ? ( path_.empty() ? std::string( "/" ) : path_ ) : path_ + "/" + key ) + ": " +
                        what );
  }

private:
  json const& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline json gamma_to_json( std::vector<gate_function> const& gamma )
{
  json arr = json::array();
  for ( auto f : gamma )
    arr.push_back( std::string( gate_name( f ) ) );
  return arr;
}

inline std::vector<gate_function> gamma_from_json( json const& j, std::string const& path )
{
  if ( j.is_string() )
  {
    auto const s = j.get<std::string>();
    if ( s == "default" )
      return default_gate_set();
    if ( s == "minimal" )
      return minimal_gate_set();
    throw format_error( path + ": unknown gate set preset '" + s + "' (expected default, minimal or a list)" );
  }
  if ( !j.is_array() )
    throw format_error( path + ": expected a gate set preset or a list of gate names" );
  std::vector<gate_function> gamma;
  for ( std::size_t i = 0; i < j.size(); ++i )
  {
    auto const p = path + "/" + std::to_string( i );
    if ( !j[i].is_string() )
      throw format_error( p + ": expected a gate name" );
    auto const f = parse_gate_name( j[i].get<std::string>() );
    if ( !f )
      throw format_error( p + ": unknown gate '" + j[i].get<std::string>() + "'" );
    gamma.push_back( *f );
  }
  return gamma;
}

inline json golden_to_json( golden_spec const& s )
{
  return { { "kind", to_string( s.kind ) }, { "width", s.width } };
}

inline golden_spec golden_from_json( json const& j, std::string const& path )
{
  object_reader r( j, path );
  golden_spec s;
  try
  {
    s.kind = golden_kind_from_string( r.string( "kind" ) );
  }
  catch ( std::invalid_argument const& e )
  {
    r.fail( "kind", e.what() );
  }
  s.width = r.uint32( "width" );
  if ( s.width < 1u || 2u * s.width > max_exhaustive_inputs )
    r.fail( "width", "must lie in [1, " + std::to_string( max_exhaustive_inputs / 2u ) + "]" );
  r.finish();
  return s;
}

inline json params_to_json( cgp_params const& p )
{
  return { { "inputs", p.num_inputs },
           { "outputs", p.num_outputs },
           { "nodes", p.num_nodes },
           { "levels_back", p.levels_back },
           { "gamma", gamma_to_json( p.gamma ) } };
}

inline json genome_to_json( genome const& g, std::optional<golden_spec> const& golden = std::nullopt )
{
  json j;
  j["format"] = genome_format;
  j["version"] = genome_format_version;
  j["params"] = params_to_json( g.params() );
  if ( golden )
    j["golden"] = golden_to_json( *golden );
  j["genes"] = std::vector<std::uint32_t>( g.genes().begin(), g.genes().end() );
  return j;
}

struct genome_file
{
  genome circuit;
  std::optional<golden_spec> golden;
};

inline genome_file genome_from_json( json const& j, std::string const& path = "" )
{
  object_reader r( j, path );
  if ( r.string( "format" ) != genome_format )
    r.fail( "format", "expected \"" + std::string( genome_format ) + "\"" );
  if ( r.unsigned_integer( "version" ) != static_cast<std::uint64_t>( genome_format_version ) )
    r.fail( "version", "unsupported version" );

  cgp_params p;
  {
    object_reader pr( r.raw( "params" ), r.child_path( "params" ) );
    p.num_inputs = pr.uint32( "inputs" );
    p.num_outputs = pr.uint32( "outputs" );
    p.num_nodes = pr.uint32( "nodes" );
    p.levels_back = pr.uint32( "levels_back", p.num_nodes );
    p.gamma = gamma_from_json( pr.raw( "gamma" ), pr.child_path( "gamma" ) );
    pr.finish();
    try
    {
      validate_params( p );
    }
    catch ( std::invalid_argument const& e )
    {
      r.fail( "params", e.what() );
    }
  }

  std::optional<golden_spec> golden;
  if ( r.has( "golden" ) )
    golden = golden_from_json( r.raw( "golden" ), r.child_path( "golden" ) );

  auto const& jg = r.raw( "genes" );
  if ( !jg.is_array() )
    r.fail( "genes", "expected an integer array" );
  std::vector<std::uint32_t> genes;
  genes.reserve( jg.size() );
  for ( std::size_t i = 0; i < jg.size(); ++i )
  {
    if ( !jg[i].is_number_unsigned() || jg[i].get<std::uint64_t>() > 0xffffffffull )
      r.fail( "genes/" + std::to_string( i ), "expected a non-negative integer" );
    genes.push_back( jg[i].get<std::uint32_t>() );
  }
  r.finish();

  genome g( std::move( p ), std::move( genes ) );
  if ( auto v = validate_genome( g ); !v.ok() )
    r.fail( "genes/" + std::to_string( v.violations.front().position ), v.violations.front().message );
  return { std::move( g ), golden };
}

inline genome_file parse_genome_text( std::string const& text, std::string const& source )
{
  auto const j = parse_json_text( text, source );
  try
  {
    return genome_from_json( j );
  }
  catch ( format_error const& e )
  {
    throw format_error( source + ": " + e.what() );
  }
}

inline json relative_to_json( relative_errors const& r )
{
  return { { "wce_pct", r.wce }, { "mae_pct", r.mae }, { "er_pct", r.er }, { "mre_pct", r.mre }, { "avg_pct", r.avg } };
}

inline json profile_to_json( error_profile const& p )
{
  json j;
  j["input_bits"] = p.input_bits;
  j["output_bits"] = p.output_bits;
  j["wce"] = p.wce;
  j["mae"] = p.mae();
  j["er"] = p.er();
  j["mre"] = p.mre;
  j["acc0"] = p.acc0 ? 1 : 0;
  j["avg"] = p.avg();
  j["stddev"] = error_stddev( p );
  j["abs_error_sum"] = p.abs_error_sum;
  j["signed_error_sum"] = p.signed_error_sum;
  j["error_count"] = p.error_count;
  j["relative"] = relative_to_json( relative_profile( p ) );
  if ( p.has_histogram )
  {
    json h = json::array();
    for ( auto const& [e, c] : p.histogram )
      h.push_back( { e, c } );
    j["histogram"] = std::move( h );
  }
  return j;
}

inline json run_result_to_json( run_result const& r, std::string const& config_name, golden_spec const& golden )
{
  json traj = json::array();
  for ( auto const& t : r.trajectory )
    traj.push_back( { t.evaluation, t.fitness } );
  return { { "config", config_name },
           { "seed", r.seed },
           { "evaluations", r.evaluations_used },
           { "best_cost", r.best_cost },
           { "golden_cost", r.golden_cost },
           { "relative_power", r.relative_power() },
           { "profile", profile_to_json( r.best_profile ) },
           { "trajectory", std::move( traj ) },
           { "genome", genome_to_json( r.best_genome, golden ) } };
}

inline json cost_table_to_json( cost_table const& t )
{
  json j = json::object();
  for ( auto const& [f, w] : t.weight )
    j[std::string( gate_name( f ) )] = w;
  return j;
}

/*! \brief Gate name -> non-negative weight. */
inline cost_table cost_table_from_json( json const& j, std::string const& source )
{
  if ( !j.is_object() )
    throw format_error( source + ": cost table must be an object mapping gate names to weights" );
  cost_table t;
  for ( auto it = j.begin(); it != j.end(); ++it )
  {
    auto const f = parse_gate_name( it.key() );
    if ( !f )
      throw format_error( source + ": /" + it.key() + ": unknown gate" );
    if ( !it.value().is_number() || it.value().get<double>() < 0.0 )
      throw format_error( source + ": /" + it.key() + ": weight must be a non-negative number" );
    t.weight[*f] = it.value().get<double>();
  }
  return t;
}

inline json constraint_to_json( constraint const& c )
{
  json j{ { "metric", to_string( c.kind ) } };
  if ( c.kind == metric::gauss )
  {
    j["sigma"] = c.gauss.sigma;
    j["amplitude"] = c.gauss.amplitude == gauss_amplitude::mass_normalized ? "mass" : "count";
  }
  else if ( c.kind != metric::acc0 )
    j["threshold"] = c.threshold;
  return j;
}

inline constraint constraint_from_json( json const& j, std::string const& path )
{
  object_reader r( j, path );
  constraint c;
  try
  {
    c.kind = metric_from_string( r.string( "metric" ) );
  }
  catch ( std::invalid_argument const& e )
  {
    r.fail( "metric", e.what() );
  }
  if ( c.kind == metric::gauss )
  {
    c.gauss.sigma = r.number( "sigma" );
    if ( !( c.gauss.sigma >= 1.0 ) )
      r.fail( "sigma", "must be at least 1" );
    auto const mode = r.string( "amplitude", "mass" );
    if ( mode == "mass" )
      c.gauss.amplitude = gauss_amplitude::mass_normalized;
    else if ( mode == "count" )
      c.gauss.amplitude = gauss_amplitude::count_normalized;
    else
      r.fail( "amplitude", "expected \"mass\" or \"count\"" );
  }
  else if ( c.kind != metric::acc0 )
  {
    c.threshold = r.number( "threshold" );
    if ( !( c.threshold >= 0.0 ) )
      r.fail( "threshold", "must be non-negative" );
  }
  r.finish();
  return c;
}

} // namespace axcgp
