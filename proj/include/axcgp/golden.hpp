/*!
  \file golden.hpp
  \brief Exact reference circuits emitted as CGP genomes

  Operand packing: operand A occupies primary inputs `0 .. w-1` (LSB first),
  operand B occupies `w .. 2w-1`. Input vector `k` therefore encodes
  `A = k mod 2^w` and `B = k div 2^w`.
*/
#pragma once

#include "netlist.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

enum class golden_kind
{
  adder,
  multiplier
};

struct golden_spec
{
  golden_kind kind{ golden_kind::multiplier };
  std::uint32_t width{ 8 };

  std::uint32_t num_inputs() const noexcept { return 2u * width; }
  std::uint32_t num_outputs() const noexcept { return kind == golden_kind::adder ? width + 1u : 2u * width; }

  bool operator==( golden_spec const& ) const = default;
};

inline std::string to_string( golden_kind k )
{
  return k == golden_kind::adder ? "adder" : "multiplier";
}

inline golden_kind golden_kind_from_string( std::string const& s )
{
  if ( s == "adder" )
    return golden_kind::adder;
  if ( s == "multiplier" )
    return golden_kind::multiplier;
  throw std::invalid_argument( "unknown golden circuit kind '" + s + "'" );
}

/*! \brief Exact value the reference circuit computes for input vector `k`. */
inline std::uint64_t golden_reference_value( golden_spec const& spec, std::uint64_t k ) noexcept
{
  auto const mask = ( std::uint64_t{ 1 } << spec.width ) - 1u;
  auto const a = k & mask;
  auto const b = ( k >> spec.width ) & mask;
  return spec.kind == golden_kind::adder ? a + b : a * b;
}

namespace detail
{

struct adder_cell
{
  std::uint32_t sum;
  std::optional<std::uint32_t> carry;
};

/*! \brief Half adder for two bits, full adder (2 XOR, 2 AND, 1 OR) for three, wire for one. */
inline adder_cell add_bits( netlist_builder& b, std::vector<std::uint32_t> const& bits )
{
  switch ( bits.size() )
  {
  case 1:
    return { bits[0], std::nullopt };
  case 2:
    return { b.xor_( bits[0], bits[1] ), b.and_( bits[0], bits[1] ) };
  case 3:
  {
    auto const p = b.xor_( bits[0], bits[1] );
    auto const s = b.xor_( p, bits[2] );
    auto const g = b.and_( bits[0], bits[1] );
    auto const t = b.and_( p, bits[2] );
    return { s, b.or_( g, t ) };
  }
  default:
    throw std::logic_error( "add_bits: unsupported bit count" );
  }
}

inline std::uint32_t zero_signal( netlist_builder& b, std::vector<gate_function> const& gamma )
{
  for ( auto f : gamma )
  {
    if ( f == gate_function::const0 )
      return b.add( gate_function::const0 );
  }
  return b.xor_( b.input( 0 ), b.input( 0 ) );
}

inline netlist ripple_carry_adder( std::uint32_t w )
{
  netlist_builder b( 2u * w );
  std::optional<std::uint32_t> carry;
  for ( std::uint32_t i = 0; i < w; ++i )
  {
    std::vector<std::uint32_t> bits{ b.input( i ), b.input( w + i ) };
    if ( carry )
      bits.push_back( *carry );
    auto const cell = add_bits( b, bits );
    b.add_output( cell.sum );
    carry = cell.carry;
  }
  b.add_output( *carry );
  return b.release();
}

/*! \brief Carry-save array: rows of adders pass carries diagonally, a ripple adder merges the last row. */
inline netlist carry_save_multiplier( std::uint32_t w, std::vector<gate_function> const& gamma )
{
  netlist_builder b( 2u * w );
  auto pp = [&]( std::uint32_t row, std::uint32_t col ) { return b.and_( b.input( col ), b.input( w + row ) ); };

  // sum[j] has weight row + j, carry[j] has weight row + j + 1
  std::vector<std::optional<std::uint32_t>> sum( w ), carry( w );
  for ( std::uint32_t j = 0; j < w; ++j )
    sum[j] = pp( 0, j );
  b.add_output( *sum[0] );

  for ( std::uint32_t i = 1; i < w; ++i )
  {
    std::vector<std::optional<std::uint32_t>> next_sum( w ), next_carry( w );
    for ( std::uint32_t j = 0; j < w; ++j )
    {
      std::vector<std::uint32_t> bits{ pp( i, j ) };
      if ( j + 1u < w && sum[j + 1u] )
        bits.push_back( *sum[j + 1u] );
      if ( carry[j] )
        bits.push_back( *carry[j] );
      auto const cell = add_bits( b, bits );
      next_sum[j] = cell.sum;
      next_carry[j] = cell.carry;
    }
    sum = std::move( next_sum );
    carry = std::move( next_carry );
    b.add_output( *sum[0] );
  }

  std::optional<std::uint32_t> ripple;
  for ( std::uint32_t k = w; k < 2u * w; ++k )
  {
    std::vector<std::uint32_t> bits;
    if ( auto const j = k - w + 1u; j < w && sum[j] )
      bits.push_back( *sum[j] );
    if ( auto const j = k - w; carry[j] )
      bits.push_back( *carry[j] );
    if ( ripple )
      bits.push_back( *ripple );
    if ( bits.empty() )
    {
      b.add_output( zero_signal( b, gamma ) );
      ripple.reset();
      continue;
    }
    auto const cell = add_bits( b, bits );
    b.add_output( cell.sum );
    ripple = cell.carry;
  }
  return b.release();
}

} // namespace detail

inline netlist golden_netlist( golden_spec const& spec, std::vector<gate_function> const& gamma = default_gate_set() )
{
  if ( spec.width < 1u )
    throw std::invalid_argument( "golden circuit width must be at least 1" );
  if ( spec.width > 16u )
    throw std::invalid_argument( "golden circuit width exceeds the exhaustive simulation cap" );
  return spec.kind == golden_kind::adder ? detail::ripple_carry_adder( spec.width )
                                         : detail::carry_save_multiplier( spec.width, gamma );
}

/*! \brief Closed-form gate count of the generated construction. */
inline std::uint32_t golden_gate_count( golden_spec const& spec )
{
  auto const w = spec.width;
  if ( spec.kind == golden_kind::adder )
    return 2u + 5u * ( w - 1u );
  if ( w == 1u )
    return 2u;
  // w^2 partial products, w half adders, w(w-2) full adders
  return w * w + 2u * w + 5u * w * ( w - 2u );
}

/*! \brief Parameters whose interface matches `spec`; `levels_back == 0` selects `num_nodes`. */
inline cgp_params golden_params( golden_spec const& spec, std::uint32_t num_nodes, std::uint32_t levels_back = 0u,
                                 std::vector<gate_function> gamma = default_gate_set() )
{
  cgp_params p;
  p.num_inputs = spec.num_inputs();
  p.num_outputs = spec.num_outputs();
  p.num_nodes = num_nodes;
  p.levels_back = levels_back == 0u ? num_nodes : levels_back;
  p.gamma = std::move( gamma );
  return p;
}

inline genome generate_golden( golden_spec const& spec, std::shared_ptr<cgp_params const> params )
{
  auto const& p = *params;
  if ( p.num_inputs != spec.num_inputs() || p.num_outputs != spec.num_outputs() )
    throw std::invalid_argument( "generate_golden: params interface (" + std::to_string( p.num_inputs ) + " in, " +
                                 std::to_string( p.num_outputs ) + " out) does not match " + to_string( spec.kind ) +
                                 " width " + std::to_string( spec.width ) );
  auto nl = golden_netlist( spec, p.gamma );
  if ( nl.gates.size() > p.num_nodes )
    throw std::invalid_argument( "generate_golden: " + to_string( spec.kind ) + " width " + std::to_string( spec.width ) +
                                 " needs " + std::to_string( nl.gates.size() ) + " nodes, params provide " +
                                 std::to_string( p.num_nodes ) );
  return encode_netlist( nl, std::move( params ) );
}

inline genome generate_golden( golden_spec const& spec, cgp_params params )
{
  return generate_golden( spec, std::make_shared<cgp_params const>( std::move( params ) ) );
}

} // namespace axcgp
