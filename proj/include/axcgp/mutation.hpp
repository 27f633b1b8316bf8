/*!
  \file mutation.hpp
  \brief Point mutation and the reproducible random source behind it
*/
#pragma once

#include "genome.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace axcgp
{

/*! \brief Engine with a standard-defined output sequence, so runs replay across toolchains. */
using rng_engine = std::mt19937_64;

constexpr std::uint64_t splitmix64( std::uint64_t x ) noexcept
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

/*! \brief Neighbouring seeds give unrelated streams because the seed is scrambled first. */
inline rng_engine make_rng( std::uint64_t seed )
{
  return rng_engine( splitmix64( seed ) );
}

/*! \brief Unbiased integer in `[0, n)`; `std::uniform_int_distribution` is not portable across libraries. */
inline std::uint64_t uniform_below( rng_engine& rng, std::uint64_t n )
{
  if ( n == 0u )
    throw std::invalid_argument( "uniform_below: empty range" );
  auto const threshold = ( 0u - n ) % n;
  for ( ;; )
  {
    auto const x = rng();
    if ( x >= threshold )
      return x % n;
  }
}

/*! \brief Draws a fresh legal value for the gene at `position`. */
inline std::uint32_t sample_gene( cgp_params const& p, std::size_t position, rng_engine& rng )
{
  auto const node_genes = static_cast<std::size_t>( p.num_nodes ) * genes_per_node;
  if ( position >= node_genes )
    return static_cast<std::uint32_t>( uniform_below( rng, p.num_signals() ) );
  auto const j = static_cast<std::uint32_t>( position / genes_per_node );
  if ( position % genes_per_node == node_arity )
    return static_cast<std::uint32_t>( uniform_below( rng, p.gamma.size() ) );
  auto const r = static_cast<std::uint32_t>( uniform_below( rng, fanin_range_size( p, j ) ) );
  return fanin_from_rank( p, j, r );
}

/*! \brief Resamples `h` distinct, uniformly chosen gene positions.

  A resampled gene may keep its old value, so the offspring differs from the
  parent in at most `h` genes.
*/
inline genome mutate( genome const& parent, std::uint32_t h, rng_engine& rng )
{
  if ( h < 1u )
    throw std::invalid_argument( "mutate: at least one gene must be mutated" );
  auto const& p = parent.params();
  auto const n = p.num_genes();
  auto const count = std::min<std::size_t>( h, n );

  genome child = parent;
  auto& genes = child.mutable_genes();

  std::vector<std::size_t> chosen;
  chosen.reserve( count );
  while ( chosen.size() < count )
  {
    auto const pos = static_cast<std::size_t>( uniform_below( rng, n ) );
    if ( std::find( chosen.begin(), chosen.end(), pos ) != chosen.end() )
      continue;
    chosen.push_back( pos );
    genes[pos] = sample_gene( p, pos, rng );
  }
  return child;
}

/*! \brief Uniformly random legal genome, used for property tests and custom starts. */
inline genome random_genome( std::shared_ptr<cgp_params const> params, rng_engine& rng )
{
  std::vector<std::uint32_t> genes( params->num_genes() );
  for ( std::size_t i = 0; i < genes.size(); ++i )
    genes[i] = sample_gene( *params, i, rng );
  return genome( std::move( params ), std::move( genes ) );
}

inline std::size_t hamming_distance( genome const& a, genome const& b )
{
  auto const ga = a.genes();
  auto const gb = b.genes();
  if ( ga.size() != gb.size() )
    throw std::invalid_argument( "hamming_distance: genome lengths differ" );
  std::size_t d = 0;
  for ( std::size_t i = 0; i < ga.size(); ++i )
    d += ga[i] != gb[i] ? 1u : 0u;
  return d;
}

} // namespace axcgp
