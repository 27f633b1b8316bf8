/*!
  \file simulator.hpp
  \brief Exhaustive bit-parallel simulation

  A plane holds one signal's value for every input vector: bit `k` of the
  concatenated words is the value under input vector `k`. All `2^n` vectors
  are enumerated, 64 per machine word.
*/
#pragma once

#include "genome.hpp"
#include "netlist.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace axcgp
{

inline constexpr std::uint32_t max_exhaustive_inputs = 24u;

class packed_planes
{
public:
  packed_planes() = default;

  packed_planes( std::uint32_t num_inputs, std::size_t num_planes )
      : num_inputs_( num_inputs ),
        words_( num_inputs >= 6u ? std::size_t{ 1 } << ( num_inputs - 6u ) : 1u ),
        num_planes_( num_planes ),
        data_( words_ * num_planes, 0u )
  {
  }

  std::uint32_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_vectors() const noexcept { return std::size_t{ 1 } << num_inputs_; }
  std::size_t words_per_plane() const noexcept { return words_; }
  std::size_t num_planes() const noexcept { return num_planes_; }

  std::span<std::uint64_t> plane( std::size_t i ) noexcept { return { data_.data() + i * words_, words_ }; }
  std::span<std::uint64_t const> plane( std::size_t i ) const noexcept { return { data_.data() + i * words_, words_ }; }

  /*! \brief Valid bits of the last word; everything above `2^n` stays zero. */
  std::uint64_t tail_mask() const noexcept
  {
    return num_inputs_ >= 6u ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << ( std::size_t{ 1 } << num_inputs_ ) ) - 1u;
  }

  bool bit( std::size_t plane_index, std::size_t k ) const noexcept
  {
    return ( data_[plane_index * words_ + ( k >> 6u )] >> ( k & 63u ) ) & 1u;
  }

  bool operator==( packed_planes const& ) const = default;

private:
  std::uint32_t num_inputs_{ 0 };
  std::size_t words_{ 0 };
  std::size_t num_planes_{ 0 };
  std::vector<std::uint64_t> data_;
};

inline packed_planes build_input_planes( std::uint32_t num_inputs )
{
  if ( num_inputs < 1u || num_inputs > max_exhaustive_inputs )
    throw std::out_of_range( "exhaustive simulation cap exceeded" );

  constexpr std::array<std::uint64_t, 6> low_masks = {
      0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
      0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

  packed_planes planes( num_inputs, num_inputs );
  auto const mask = planes.tail_mask();
  for ( std::uint32_t i = 0; i < num_inputs; ++i )
  {
    auto words = planes.plane( i );
    for ( std::size_t w = 0; w < words.size(); ++w )
    {
      if ( i < 6u )
        words[w] = low_masks[i] & mask;
      else
        words[w] = ( w >> ( i - 6u ) ) & 1u ? ~std::uint64_t{ 0 } : 0u;
    }
  }
  return planes;
}

/*! \brief Reusable evaluation context; keeps scratch buffers alive across genomes. */
class bit_simulator
{
public:
  explicit bit_simulator( packed_planes inputs ) : inputs_( std::move( inputs ) ) {}

  packed_planes const& inputs() const noexcept { return inputs_; }

  /*! \brief Active-node flags of the genome passed to the last `run`. */
  std::vector<std::uint8_t> const& active() const noexcept { return active_; }

  /*! \brief Evaluates the active nodes of `g`; the returned reference is valid until the next call. */
  packed_planes const& run( genome const& g )
  {
    auto const& p = g.params();
    check_inputs( p.num_inputs );
    active_ = active_nodes( g );
    ops_.clear();
    for ( std::uint32_t j = 0; j < p.num_nodes; ++j )
    {
      if ( !active_[j] )
        continue;
      auto const n = g.node( j );
      ops_.push_back( { p.gamma[n.function], n.in0, n.in1, p.num_inputs + j } );
    }
    outputs_.clear();
    for ( std::uint32_t k = 0; k < p.num_outputs; ++k )
      outputs_.push_back( g.output( k ) );
    return execute( p.num_signals() );
  }

  packed_planes const& run( netlist const& nl )
  {
    check_inputs( nl.num_inputs );
    if ( auto err = check_netlist( nl ); !err.empty() )
      throw std::invalid_argument( "simulate: " + err );
    ops_.clear();
    for ( std::size_t k = 0; k < nl.gates.size(); ++k )
    {
      auto const& gt = nl.gates[k];
      ops_.push_back( { gt.function, gt.fanins[0], gt.fanins[1], nl.num_inputs + static_cast<std::uint32_t>( k ) } );
    }
    outputs_ = nl.outputs;
    return execute( nl.num_signals() );
  }

private:
  struct op
  {
    gate_function function;
    std::uint32_t a;
    std::uint32_t b;
    std::uint32_t dst;
  };

  void check_inputs( std::uint32_t n ) const
  {
    if ( n != inputs_.num_inputs() )
      throw std::invalid_argument( "simulate: circuit has " + std::to_string( n ) + " inputs, planes enumerate " +
                                   std::to_string( inputs_.num_inputs() ) );
  }

  template<class Fn>
  static void apply( std::uint64_t* dst, std::uint64_t const* a, std::uint64_t const* b, std::size_t n, Fn fn )
  {
    for ( std::size_t i = 0; i < n; ++i )
      dst[i] = fn( a[i], b[i] );
  }

  packed_planes const& execute( std::uint32_t num_signals )
  {
    auto const words = inputs_.words_per_plane();
    scratch_.resize( ops_.size() * words );
    signal_.assign( num_signals, nullptr );
    for ( std::uint32_t i = 0; i < inputs_.num_inputs(); ++i )
      signal_[i] = inputs_.plane( i ).data();

    for ( std::size_t k = 0; k < ops_.size(); ++k )
    {
      auto const& o = ops_[k];
      auto* dst = scratch_.data() + k * words;
      auto const* a = signal_[o.a];
      auto const* b = signal_[o.b];
      switch ( o.function )
      {
      case gate_function::buf:    std::copy_n( a, words, dst ); break;
      case gate_function::inv:    std::transform( a, a + words, dst, []( auto x ) { return ~x; } ); break;
      case gate_function::and_:   apply( dst, a, b, words, []( auto x, auto y ) { return x & y; } ); break;
      case gate_function::or_:    apply( dst, a, b, words, []( auto x, auto y ) { return x | y; } ); break;
      case gate_function::xor_:   apply( dst, a, b, words, []( auto x, auto y ) { return x ^ y; } ); break;
      case gate_function::nand:   apply( dst, a, b, words, []( auto x, auto y ) { return ~( x & y ); } ); break;
      case gate_function::nor:    apply( dst, a, b, words, []( auto x, auto y ) { return ~( x | y ); } ); break;
      case gate_function::xnor:   apply( dst, a, b, words, []( auto x, auto y ) { return ~( x ^ y ); } ); break;
      case gate_function::const0: std::fill_n( dst, words, std::uint64_t{ 0 } ); break;
      case gate_function::const1: std::fill_n( dst, words, ~std::uint64_t{ 0 } ); break;
      }
      signal_[o.dst] = dst;
    }

    if ( result_.num_inputs() != inputs_.num_inputs() || result_.num_planes() != outputs_.size() )
      result_ = packed_planes( inputs_.num_inputs(), outputs_.size() );
    auto const mask = inputs_.tail_mask();
    for ( std::size_t k = 0; k < outputs_.size(); ++k )
    {
      auto out = result_.plane( k );
      std::copy_n( signal_[outputs_[k]], words, out.data() );
      out[words - 1u] &= mask;
    }
    return result_;
  }

  packed_planes inputs_;
  packed_planes result_;
  std::vector<std::uint8_t> active_;
  std::vector<op> ops_;
  std::vector<std::uint32_t> outputs_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t const*> signal_;
};

inline packed_planes simulate( genome const& g, packed_planes const& inputs )
{
  require_valid( g );
  bit_simulator sim( inputs );
  return sim.run( g );
}

inline packed_planes simulate( netlist const& nl, packed_planes const& inputs )
{
  bit_simulator sim( inputs );
  return sim.run( nl );
}

/*! \brief Per-input integer outputs; plane `j` contributes bit `j`. */
struct output_ints
{
  std::vector<std::uint64_t> values;
  std::uint32_t width{ 0 };

  bool operator==( output_ints const& ) const = default;
};

inline void extract_output_ints( packed_planes const& planes, std::uint32_t m, output_ints& out )
{
  if ( m != planes.num_planes() )
    throw std::invalid_argument( "extract_output_ints: expected " + std::to_string( m ) + " planes, got " +
                                 std::to_string( planes.num_planes() ) );
  if ( m > 64u )
    throw std::invalid_argument( "extract_output_ints: output wider than 64 bits" );
  auto const n = planes.num_vectors();
  out.width = m;
  out.values.assign( n, 0u );
  auto* values = out.values.data();
  for ( std::uint32_t j = 0; j < m; ++j )
  {
    auto const words = planes.plane( j );
    for ( std::size_t w = 0; w < words.size(); ++w )
    {
      auto word = words[w];
      while ( word )
      {
        auto const b = static_cast<std::size_t>( std::countr_zero( word ) );
        values[( w << 6u ) + b] |= std::uint64_t{ 1 } << j;
        word &= word - 1u;
      }
    }
  }
}

inline output_ints extract_output_ints( packed_planes const& planes, std::uint32_t m )
{
  output_ints out;
  extract_output_ints( planes, m, out );
  return out;
}

} // namespace axcgp
