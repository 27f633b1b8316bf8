/*!
  \file experiment.hpp
  \brief Experiment configuration file

      {
        "golden": { "kind": "multiplier", "width": 4 },
        "cgp": { "nodes": 120, "levels_back": 120, "gate_set": "default" },
        "search": { "lambda": 4, "mutations": 5, "budget_evals": 100000,
                    "wall_clock_secs": 0, "repeats": 3, "seed": 1 },
        "constraint_grid": [
          { "name": "wce5", "constraints": [ { "metric": "WCE", "threshold": 5 } ] },
          { "name": "wce5_gauss", "constraints": [ { "metric": "WCE", "threshold": 5 },
                                                  { "metric": "GAUSS", "sigma": 8, "amplitude": "mass" } ] }
        ],
        "cost_table": "weights.json",
        "output_dir": "out",
        "report_gauss_sigma": 8
      }

  Thresholds are relative percent. `levels_back`, `gate_set`, every `search`
  field except `budget_evals`, `cost_table`, `output_dir` and
  `report_gauss_sigma` are optional. Unknown fields are rejected. Operands are
  packed with A in the low input bits and B in the high input bits.
*/
#pragma once

#include "serialization.hpp"

#include <cerrno>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <system_error>
#include <string>
#include <vector>

namespace axcgp
{

struct experiment_config
{
  golden_spec golden{};
  cgp_params params{};
  std::uint32_t lambda{ 4 };
  std::uint32_t mutations{ 5 };
  search_budget budget{};
  std::uint32_t repeats{ 1 };
  std::uint64_t seed{ 1 };
  std::vector<constraint_set> grid;
  std::optional<std::string> cost_table_path;
  cost_table costs = default_cost_table();
  std::string output_dir{ "axcgp-out" };
  /*! \brief Sigma used for the `gauss_ok` report column when a run has no GAUSS constraint. */
  std::optional<double> report_gauss_sigma;

  search_config base_search() const
  {
    search_config cfg;
    cfg.golden = golden;
    cfg.params = params;
    cfg.lambda = lambda;
    cfg.mutations = mutations;
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.costs = costs;
    if ( !grid.empty() )
      cfg.constraints = grid.front();
    return cfg;
  }
};

inline std::string read_text_file( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw std::system_error( errno, std::generic_category(), "cannot open " + path.string() );
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline cost_table load_cost_table( std::filesystem::path const& path )
{
  auto const text = read_text_file( path );
  auto t = cost_table_from_json( parse_json_text( text, path.string() ), path.string() );
  validate_cost_table( t );
  return t;
}

inline bool is_safe_name( std::string const& s )
{
  if ( s.empty() )
    return false;
  for ( char c : s )
  {
    bool const ok = ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) || c == '_' ||
                    c == '-' || c == '.' || c == '+';
    if ( !ok )
      return false;
  }
  return true;
}

/*! \brief Parses and validates a configuration; `base_dir` resolves a relative cost-table path. */
inline experiment_config parse_experiment_config( std::string const& text, std::string const& source,
                                                  std::filesystem::path const& base_dir = {} )
{
  auto const root = parse_json_text( text, source );
  experiment_config cfg;
  try
  {
    object_reader r( root, "" );
    cfg.golden = golden_from_json( r.raw( "golden" ), "/golden" );

    {
      object_reader c( r.raw( "cgp" ), "/cgp" );
      auto const nodes = c.uint32( "nodes" );
      auto const lb = c.uint32( "levels_back", nodes );
      auto gamma = c.has( "gate_set" ) ? gamma_from_json( c.raw( "gate_set" ), "/cgp/gate_set" ) : default_gate_set();
      cfg.params = golden_params( cfg.golden, nodes, lb, std::move( gamma ) );
      c.finish();
      try
      {
        validate_params( cfg.params );
      }
      catch ( std::invalid_argument const& e )
      {
        c.fail( "", e.what() );
      }
      if ( auto const need = golden_gate_count( cfg.golden ); need > nodes )
        c.fail( "nodes", to_string( cfg.golden.kind ) + " width " + std::to_string( cfg.golden.width ) + " needs " +
                             std::to_string( need ) + " nodes" );
      try
      {
        generate_golden( cfg.golden, cfg.params );
      }
      catch ( std::invalid_argument const& e )
      {
        c.fail( "", std::string( "cannot place the reference circuit: " ) + e.what() );
      }
    }

    {
      object_reader s( r.raw( "search" ), "/search" );
      cfg.lambda = s.uint32( "lambda", cfg.lambda );
      cfg.mutations = s.uint32( "mutations", cfg.mutations );
      cfg.budget.max_evaluations = s.unsigned_integer( "budget_evals" );
      cfg.budget.wall_clock_secs = s.number( "wall_clock_secs", 0.0 );
      cfg.repeats = s.uint32( "repeats", cfg.repeats );
      cfg.seed = s.unsigned_integer( "seed", cfg.seed );
      s.finish();
      if ( cfg.lambda < 1u )
        s.fail( "lambda", "must be at least 1" );
      if ( cfg.mutations < 1u )
        s.fail( "mutations", "must be at least 1" );
      if ( cfg.repeats < 1u )
        s.fail( "repeats", "must be at least 1" );
      if ( !( cfg.budget.wall_clock_secs >= 0.0 ) )
        s.fail( "wall_clock_secs", "must be non-negative" );
    }

    auto const& grid = r.raw( "constraint_grid" );
    if ( !grid.is_array() || grid.empty() )
      r.fail( "constraint_grid", "expected a non-empty array" );
    std::set<std::string> names;
    for ( std::size_t i = 0; i < grid.size(); ++i )
    {
      auto const path = "/constraint_grid/" + std::to_string( i );
      object_reader g( grid[i], path );
      constraint_set cs;
      cs.name = g.string( "name" );
      if ( !is_safe_name( cs.name ) )
        g.fail( "name", "must be non-empty and use only letters, digits, '_', '-', '.', '+'" );
      if ( !names.insert( cs.name ).second )
        g.fail( "name", "duplicate configuration name '" + cs.name + "'" );
      auto const& items = g.raw( "constraints" );
      if ( !items.is_array() )
        g.fail( "constraints", "expected an array" );
      for ( std::size_t k = 0; k < items.size(); ++k )
        cs.items.push_back( constraint_from_json( items[k], path + "/constraints/" + std::to_string( k ) ) );
      g.finish();
      try
      {
        validate_constraints( cs );
      }
      catch ( std::invalid_argument const& e )
      {
        g.fail( "constraints", e.what() );
      }
      cfg.grid.push_back( std::move( cs ) );
    }

    if ( r.has( "cost_table" ) )
      cfg.cost_table_path = r.string( "cost_table" );
    cfg.output_dir = r.string( "output_dir", cfg.output_dir );
    if ( r.has( "report_gauss_sigma" ) )
    {
      cfg.report_gauss_sigma = r.number( "report_gauss_sigma" );
      if ( !( *cfg.report_gauss_sigma >= 1.0 ) )
        r.fail( "report_gauss_sigma", "must be at least 1" );
    }
    r.finish();
  }
  catch ( format_error const& e )
  {
    throw format_error( source + ": " + e.what() );
  }

  if ( cfg.cost_table_path )
  {
    std::filesystem::path p( *cfg.cost_table_path );
    if ( p.is_relative() && !base_dir.empty() )
      p = base_dir / p;
    cfg.costs = load_cost_table( p );
  }
  for ( auto f : cfg.params.gamma )
  {
    if ( !cfg.costs.weight.count( f ) )
      throw format_error( source + ": cost table has no weight for enabled gate " + std::string( gate_name( f ) ) );
  }
  return cfg;
}

inline experiment_config load_experiment_config( std::filesystem::path const& path )
{
  return parse_experiment_config( read_text_file( path ), path.string(), path.parent_path() );
}

} // namespace axcgp
