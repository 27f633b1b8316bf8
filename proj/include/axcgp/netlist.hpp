/*!
  \file netlist.hpp
  \brief Gate-level netlist decoded from the active part of a genome

  Signals are numbered like in a genome: primary inputs first, then one
  signal per gate in topological order.
*/
#pragma once

#include "genome.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

struct gate
{
  gate_function function;
  std::array<std::uint32_t, 2> fanins{ 0u, 0u };

  bool operator==( gate const& ) const = default;
};

struct netlist
{
  std::uint32_t num_inputs{ 0 };
  std::vector<gate> gates;
  std::vector<std::uint32_t> outputs;

  std::uint32_t num_signals() const noexcept
  {
    return num_inputs + static_cast<std::uint32_t>( gates.size() );
  }

  bool operator==( netlist const& ) const = default;
};

/*! \brief Checks topological order and index ranges; returns an empty string when well-formed. */
inline std::string check_netlist( netlist const& nl )
{
  for ( std::size_t k = 0; k < nl.gates.size(); ++k )
  {
    auto const self = nl.num_inputs + k;
    for ( unsigned i = 0; i < arity( nl.gates[k].function ); ++i )
    {
      if ( nl.gates[k].fanins[i] >= self )
        return "gate " + std::to_string( k ) + " references a later signal";
    }
  }
  for ( auto o : nl.outputs )
  {
    if ( o >= nl.num_signals() )
      return "output references unknown signal " + std::to_string( o );
  }
  return {};
}

/*! \brief Keeps exactly the nodes reachable from an output; unused fan-in slots are zeroed. */
inline netlist decode_active( genome const& g )
{
  require_valid( g );
  auto const& p = g.params();
  auto const active = active_nodes( g );

  std::vector<std::uint32_t> remap( p.num_signals(), 0u );
  for ( std::uint32_t i = 0; i < p.num_inputs; ++i )
    remap[i] = i;

  netlist nl;
  nl.num_inputs = p.num_inputs;
  for ( std::uint32_t j = 0; j < p.num_nodes; ++j )
  {
    if ( !active[j] )
      continue;
    auto const n = g.node( j );
    gate gt{ p.gamma[n.function] };
    auto const a = arity( gt.function );
    if ( a >= 1u )
      gt.fanins[0] = remap[n.in0];
    if ( a >= 2u )
      gt.fanins[1] = remap[n.in1];
    remap[p.num_inputs + j] = nl.num_signals();
    nl.gates.push_back( gt );
  }
  nl.outputs.reserve( p.num_outputs );
  for ( std::uint32_t k = 0; k < p.num_outputs; ++k )
    nl.outputs.push_back( remap[g.output( k )] );
  return nl;
}

/*! \brief Places the gates of `nl` in the first nodes of a genome under `params`.

  Remaining nodes get placeholder genes `(0, 0, 0)`, which are legal and
  inactive because nothing references them.
*/
inline genome encode_netlist( netlist const& nl, std::shared_ptr<cgp_params const> params )
{
  auto const& p = *params;
  if ( nl.num_inputs != p.num_inputs || nl.outputs.size() != p.num_outputs )
    throw std::invalid_argument( "encode_netlist: interface does not match params" );
  if ( nl.gates.size() > p.num_nodes )
    throw std::invalid_argument( "encode_netlist: netlist needs " + std::to_string( nl.gates.size() ) +
                                 " nodes, params provide " + std::to_string( p.num_nodes ) );
  if ( auto err = check_netlist( nl ); !err.empty() )
    throw std::invalid_argument( "encode_netlist: " + err );

  std::vector<std::uint32_t> genes( p.num_genes(), 0u );
  for ( std::size_t k = 0; k < nl.gates.size(); ++k )
  {
    auto const& gt = nl.gates[k];
    auto const code = p.function_code( gt.function );
    if ( code < 0 )
      throw std::invalid_argument( "encode_netlist: function " + std::string( gate_name( gt.function ) ) +
                                   " is not enabled" );
    auto const base = k * genes_per_node;
    auto const a = arity( gt.function );
    genes[base] = a >= 1u ? gt.fanins[0] : 0u;
    genes[base + 1] = a >= 2u ? gt.fanins[1] : 0u;
    genes[base + 2] = static_cast<std::uint32_t>( code );
  }
  auto const out_base = static_cast<std::size_t>( p.num_nodes ) * genes_per_node;
  for ( std::size_t k = 0; k < nl.outputs.size(); ++k )
    genes[out_base + k] = nl.outputs[k];

  genome g( std::move( params ), std::move( genes ) );
  require_valid( g );
  return g;
}

inline genome encode_netlist( netlist const& nl, cgp_params params )
{
  return encode_netlist( nl, std::make_shared<cgp_params const>( std::move( params ) ) );
}

/*! \brief Per-function gate counts; every function is present, zero counts included. */
inline std::map<gate_function, std::size_t> count_gates( netlist const& nl )
{
  std::map<gate_function, std::size_t> counts;
  for ( auto f : all_gate_functions )
    counts[f] = 0u;
  for ( auto const& gt : nl.gates )
    ++counts[gt.function];
  return counts;
}

/*! \brief Incremental netlist construction used by the reference circuit generators. */
class netlist_builder
{
public:
  explicit netlist_builder( std::uint32_t num_inputs ) { nl_.num_inputs = num_inputs; }

  std::uint32_t input( std::uint32_t i ) const
  {
    if ( i >= nl_.num_inputs )
      throw std::out_of_range( "netlist_builder: input index" );
    return i;
  }

  std::uint32_t add( gate_function f, std::uint32_t a = 0u, std::uint32_t b = 0u )
  {
    nl_.gates.push_back( { f, { arity( f ) >= 1u ? a : 0u, arity( f ) >= 2u ? b : 0u } } );
    return nl_.num_signals() - 1u;
  }

  std::uint32_t and_( std::uint32_t a, std::uint32_t b ) { return add( gate_function::and_, a, b ); }
  std::uint32_t or_( std::uint32_t a, std::uint32_t b ) { return add( gate_function::or_, a, b ); }
  std::uint32_t xor_( std::uint32_t a, std::uint32_t b ) { return add( gate_function::xor_, a, b ); }

  void add_output( std::uint32_t s ) { nl_.outputs.push_back( s ); }

  netlist const& get() const noexcept { return nl_; }
  netlist release() { return std::move( nl_ ); }

private:
  netlist nl_;
};

} // namespace axcgp
