/*!
  \file params.hpp
  \brief Shape of a linear (1D) CGP encoding
*/
#pragma once

#include "gate.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

/*! \brief Node arity of every CGP node. */
inline constexpr std::uint32_t node_arity = 2u;

/*! \brief Genes per node: fan-ins followed by the function index. */
inline constexpr std::uint32_t genes_per_node = node_arity + 1u;

/*! \brief The eight two-level logic functions plus both constants. */
inline std::vector<gate_function> default_gate_set()
{
  return { gate_function::buf, gate_function::inv, gate_function::and_, gate_function::or_,
           gate_function::xor_, gate_function::nand, gate_function::nor, gate_function::xnor,
           gate_function::const0, gate_function::const1 };
}

/*! \brief INV=0, AND=1, OR=2, XOR=3, the small set used for the textbook full-adder encoding. */
inline std::vector<gate_function> minimal_gate_set()
{
  return { gate_function::inv, gate_function::and_, gate_function::or_, gate_function::xor_ };
}

struct cgp_params
{
  std::uint32_t num_inputs{ 1 };
  std::uint32_t num_outputs{ 1 };
  std::uint32_t num_nodes{ 1 };
  /*! \brief How many preceding nodes a fan-in may reference; primary inputs are always reachable. */
  std::uint32_t levels_back{ 1 };
  std::vector<gate_function> gamma = default_gate_set();

  std::uint32_t num_signals() const noexcept { return num_inputs + num_nodes; }
  std::size_t num_genes() const noexcept
  {
    return static_cast<std::size_t>( num_nodes ) * genes_per_node + num_outputs;
  }

  /*! \brief Position of `f` in gamma, or -1 when disabled. */
  int function_code( gate_function f ) const noexcept
  {
    auto it = std::find( gamma.begin(), gamma.end(), f );
    return it == gamma.end() ? -1 : static_cast<int>( it - gamma.begin() );
  }

  bool operator==( cgp_params const& ) const = default;
};

inline void validate_params( cgp_params const& p )
{
  if ( p.num_inputs < 1u )
    throw std::invalid_argument( "cgp params: at least one primary input required" );
  if ( p.num_outputs < 1u )
    throw std::invalid_argument( "cgp params: at least one primary output required" );
  if ( p.num_nodes < 1u )
    throw std::invalid_argument( "cgp params: at least one node required" );
  if ( p.levels_back < 1u || p.levels_back > p.num_nodes )
    throw std::invalid_argument( "cgp params: levels_back must lie in [1, num_nodes]" );
  if ( p.gamma.empty() )
    throw std::invalid_argument( "cgp params: empty function set" );
  for ( std::size_t i = 0; i < p.gamma.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < p.gamma.size(); ++j )
    {
      if ( p.gamma[i] == p.gamma[j] )
        throw std::invalid_argument( "cgp params: duplicate function " + std::string( gate_name( p.gamma[i] ) ) );
    }
  }
}

} // namespace axcgp
