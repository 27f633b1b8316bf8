/*!
  \file cost.hpp
  \brief Static gate-level power proxy

  Each gate contributes a fixed weight; the default weights follow
  static-CMOS transistor counts. Wires, loads and switching activity are not
  modelled.
*/
#pragma once

#include "genome.hpp"
#include "netlist.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace axcgp
{

struct cost_table
{
  std::map<gate_function, double> weight;

  double at( gate_function f ) const
  {
    auto it = weight.find( f );
    if ( it == weight.end() )
      throw std::invalid_argument( "cost table has no weight for gate " + std::string( gate_name( f ) ) );
    return it->second;
  }

  bool operator==( cost_table const& ) const = default;
};

inline cost_table default_cost_table()
{
  return { { { gate_function::inv, 2.0 },
             { gate_function::buf, 4.0 },
             { gate_function::nand, 4.0 },
             { gate_function::nor, 4.0 },
             { gate_function::and_, 6.0 },
             { gate_function::or_, 6.0 },
             { gate_function::xor_, 8.0 },
             { gate_function::xnor, 8.0 },
             { gate_function::const0, 0.0 },
             { gate_function::const1, 0.0 } } };
}

inline void validate_cost_table( cost_table const& t )
{
  for ( auto const& [f, w] : t.weight )
  {
    if ( !std::isfinite( w ) || w < 0.0 )
      throw std::invalid_argument( "cost table weight for " + std::string( gate_name( f ) ) +
                                   " must be finite and non-negative" );
  }
}

inline double power_estimate( netlist const& nl, cost_table const& t )
{
  double sum = 0.0;
  for ( auto const& gt : nl.gates )
    sum += t.at( gt.function );
  return sum;
}

/*! \brief Same value as `power_estimate( decode_active( g ), t )` without building the netlist. */
inline double power_estimate( genome const& g, std::vector<std::uint8_t> const& active, cost_table const& t )
{
  double sum = 0.0;
  for ( std::uint32_t j = 0; j < g.params().num_nodes; ++j )
  {
    if ( active[j] )
      sum += t.at( g.node_function( j ) );
  }
  return sum;
}

inline double relative_power( netlist const& cand, netlist const& golden, cost_table const& t )
{
  auto const ref = power_estimate( golden, t );
  if ( !( ref > 0.0 ) )
    throw std::invalid_argument( "relative_power: golden circuit has zero cost" );
  return power_estimate( cand, t ) / ref;
}

} // namespace axcgp
