/*!
  \file genome.hpp
  \brief Integer-encoded CGP candidate circuit

  Layout: `num_nodes` triples `(in0, in1, function)` in node order followed by
  `num_outputs` output genes. Primary inputs occupy signal indices
  `0 .. num_inputs-1`; node `j` drives signal `num_inputs + j`.
*/
#pragma once

#include "params.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

struct node_gene
{
  std::uint32_t in0;
  std::uint32_t in1;
  std::uint32_t function;
};

class genome
{
public:
  genome( std::shared_ptr<cgp_params const> params, std::vector<std::uint32_t> genes )
      : params_( std::move( params ) ), genes_( std::move( genes ) )
  {
    if ( !params_ )
      throw std::invalid_argument( "genome: null params" );
    validate_params( *params_ );
  }

  genome( cgp_params params, std::vector<std::uint32_t> genes )
      : genome( std::make_shared<cgp_params const>( std::move( params ) ), std::move( genes ) )
  {
  }

  cgp_params const& params() const noexcept { return *params_; }
  std::shared_ptr<cgp_params const> const& shared_params() const noexcept { return params_; }

  std::span<std::uint32_t const> genes() const noexcept { return genes_; }
  std::vector<std::uint32_t>& mutable_genes() noexcept { return genes_; }

  node_gene node( std::uint32_t j ) const noexcept
  {
    auto const base = static_cast<std::size_t>( j ) * genes_per_node;
    return { genes_[base], genes_[base + 1], genes_[base + 2] };
  }

  gate_function node_function( std::uint32_t j ) const noexcept
  {
    return params_->gamma[genes_[static_cast<std::size_t>( j ) * genes_per_node + 2]];
  }

  std::uint32_t output( std::uint32_t k ) const noexcept
  {
    return genes_[static_cast<std::size_t>( params_->num_nodes ) * genes_per_node + k];
  }

  std::size_t output_gene_offset() const noexcept
  {
    return static_cast<std::size_t>( params_->num_nodes ) * genes_per_node;
  }

  friend bool operator==( genome const& a, genome const& b )
  {
    return a.genes_ == b.genes_ && *a.params_ == *b.params_;
  }

private:
  std::shared_ptr<cgp_params const> params_;
  std::vector<std::uint32_t> genes_;
};

struct violation
{
  std::size_t position;
  std::string message;
};

struct validation_result
{
  std::vector<violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }

  std::string to_string() const
  {
    std::string s;
    for ( auto const& v : violations )
    {
      if ( !s.empty() )
        s += "; ";
      s += "gene " + std::to_string( v.position ) + ": " + v.message;
    }
    return s;
  }
};

class invalid_genome : public std::invalid_argument
{
public:
  explicit invalid_genome( validation_result r )
      : std::invalid_argument( "invalid genome: " + r.to_string() ), result_( std::move( r ) ) {}

  validation_result const& result() const noexcept { return result_; }

private:
  validation_result result_;
};

/*! \brief Number of legal values for a fan-in gene of node `j`. */
inline std::uint32_t fanin_range_size( cgp_params const& p, std::uint32_t j ) noexcept
{
  return p.num_inputs + std::min( j, p.levels_back );
}

/*! \brief Maps `r` in `[0, fanin_range_size)` to a signal index legal for node `j`. */
inline std::uint32_t fanin_from_rank( cgp_params const& p, std::uint32_t j, std::uint32_t r ) noexcept
{
  if ( r < p.num_inputs )
    return r;
  return p.num_inputs + j - std::min( j, p.levels_back ) + ( r - p.num_inputs );
}

inline validation_result validate_genome( genome const& g )
{
  auto const& p = g.params();
  validation_result res;
  auto const genes = g.genes();
  if ( genes.size() != p.num_genes() )
  {
    res.violations.push_back( { genes.size(), "gene count mismatch: expected " + std::to_string( p.num_genes() ) +
                                                  ", got " + std::to_string( genes.size() ) } );
    return res;
  }

  for ( std::uint32_t j = 0; j < p.num_nodes; ++j )
  {
    auto const self = p.num_inputs + j;
    auto const base = static_cast<std::size_t>( j ) * genes_per_node;
    for ( std::uint32_t k = 0; k < node_arity; ++k )
    {
      auto const idx = genes[base + k];
      if ( idx < p.num_inputs )
        continue;
      if ( idx >= self )
        res.violations.push_back( { base + k, "feedback/forward reference" } );
      else if ( self - idx > p.levels_back )
        res.violations.push_back( { base + k, "levels-back exceeded" } );
    }
    if ( genes[base + 2] >= p.gamma.size() )
      res.violations.push_back( { base + 2, "function index out of range" } );
  }

  auto const out_base = g.output_gene_offset();
  for ( std::uint32_t k = 0; k < p.num_outputs; ++k )
  {
    if ( genes[out_base + k] >= p.num_signals() )
      res.violations.push_back( { out_base + k, "output index out of range" } );
  }
  return res;
}

inline void require_valid( genome const& g )
{
  auto r = validate_genome( g );
  if ( !r.ok() )
    throw invalid_genome( std::move( r ) );
}

/*! \brief Marks nodes backward-reachable from the outputs, honouring each function's arity. */
inline std::vector<std::uint8_t> active_nodes( genome const& g )
{
  auto const& p = g.params();
  std::vector<std::uint8_t> active( p.num_nodes, 0u );
  for ( std::uint32_t k = 0; k < p.num_outputs; ++k )
  {
    auto const o = g.output( k );
    if ( o >= p.num_inputs )
      active[o - p.num_inputs] = 1u;
  }
  for ( std::uint32_t j = p.num_nodes; j-- > 0; )
  {
    if ( !active[j] )
      continue;
    auto const n = g.node( j );
    auto const a = arity( p.gamma[n.function] );
    if ( a >= 1u && n.in0 >= p.num_inputs )
      active[n.in0 - p.num_inputs] = 1u;
    if ( a >= 2u && n.in1 >= p.num_inputs )
      active[n.in1 - p.num_inputs] = 1u;
  }
  return active;
}

} // namespace axcgp
