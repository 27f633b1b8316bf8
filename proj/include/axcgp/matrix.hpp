/*!
  \file matrix.hpp
  \brief Repeated independent runs over a grid of constraint sets
*/
#pragma once

#include "search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace axcgp
{

/*! \brief Seed of run `(config, repeat)`: a flat counter starting at `base`.

  Config `c`, repeat `r` gets `base + c * repeats + r`, so all seeds in a
  matrix are distinct and config 0 uses `base, base+1, ...`. The run seed is
  scrambled by `make_rng`, so consecutive seeds give independent streams.
*/
constexpr std::uint64_t derive_seed( std::uint64_t base, std::size_t config_index, std::uint32_t repeat,
                                     std::uint32_t repeats ) noexcept
{
  return base + static_cast<std::uint64_t>( config_index ) * repeats + repeat;
}

struct matrix_entry
{
  std::size_t config_index{ 0 };
  std::string config_name;
  std::uint32_t repeat{ 0 };
  std::uint64_t seed{ 0 };
  std::optional<run_result> result;
  /*! \brief Failure message when `result` is empty. */
  std::string error;
};

/*! \brief Runs `repeats` seeds per constraint set on `workers` threads.

  Output order is `(config, repeat)` regardless of scheduling. A failing run
  is recorded in its entry and does not stop the others. `observer`, if set,
  is called concurrently from worker threads.
*/
inline std::vector<matrix_entry> run_matrix( search_config const& base, std::vector<constraint_set> const& grid,
                                             std::uint32_t repeats, unsigned workers = 0u,
                                             evaluation_observer const& observer = {} )
{
  if ( repeats < 1u )
    throw std::invalid_argument( "run_matrix: repeats must be at least 1" );

  std::vector<matrix_entry> entries;
  entries.reserve( grid.size() * repeats );
  for ( std::size_t c = 0; c < grid.size(); ++c )
  {
    for ( std::uint32_t r = 0; r < repeats; ++r )
      entries.push_back( { c, grid[c].name, r, derive_seed( base.seed, c, r, repeats ), std::nullopt, {} } );
  }

  auto const job = [&]( matrix_entry& e ) {
    try
    {
      auto cfg = base;
      cfg.constraints = grid[e.config_index];
      cfg.seed = e.seed;
      e.result = evolve( cfg, observer );
    }
    catch ( std::exception const& ex )
    {
      e.error = ex.what();
    }
  };

  if ( workers == 0u )
    workers = std::max( 1u, std::thread::hardware_concurrency() );
  workers = static_cast<unsigned>( std::min<std::size_t>( workers, entries.size() ) );

  if ( workers <= 1u )
  {
    for ( auto& e : entries )
      job( e );
    return entries;
  }

  std::atomic<std::size_t> next{ 0 };
  {
    std::vector<std::jthread> pool;
    for ( unsigned w = 0; w < workers; ++w )
    {
      pool.emplace_back( [&] {
        for ( auto i = next.fetch_add( 1u ); i < entries.size(); i = next.fetch_add( 1u ) )
          job( entries[i] );
      } );
    }
  }
  return entries;
}

} // namespace axcgp
