/*!
  \file gate.hpp
  \brief Gate functions available to CGP nodes

  Every node of a candidate circuit is a single gate with at most two
  fan-ins. The functions are evaluated bit-parallel on 64-bit words.
*/
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace axcgp
{

enum class gate_function : std::uint8_t
{
  buf,
  inv,
  and_,
  or_,
  xor_,
  nand,
  nor,
  xnor,
  const0,
  const1
};

inline constexpr std::size_t num_gate_functions = 10u;

inline constexpr std::array<gate_function, num_gate_functions> all_gate_functions = {
    gate_function::buf, gate_function::inv, gate_function::and_, gate_function::or_,
    gate_function::xor_, gate_function::nand, gate_function::nor, gate_function::xnor,
    gate_function::const0, gate_function::const1 };

constexpr unsigned arity( gate_function f ) noexcept
{
  switch ( f )
  {
  case gate_function::const0:
  case gate_function::const1:
    return 0u;
  case gate_function::buf:
  case gate_function::inv:
    return 1u;
  default:
    return 2u;
  }
}

constexpr std::string_view gate_name( gate_function f ) noexcept
{
  constexpr std::array<std::string_view, num_gate_functions> names = {
      "BUF", "INV", "AND", "OR", "XOR", "NAND", "NOR", "XNOR", "CONST0", "CONST1" };
  return names[static_cast<std::size_t>( f )];
}

inline std::optional<gate_function> parse_gate_name( std::string_view name ) noexcept
{
  for ( auto f : all_gate_functions )
  {
    if ( gate_name( f ) == name )
      return f;
  }
  return std::nullopt;
}

inline gate_function gate_from_name( std::string_view name )
{
  if ( auto f = parse_gate_name( name ) )
    return *f;
  throw std::invalid_argument( "unknown gate function '" + std::string( name ) + "'" );
}

/*! \brief Evaluates one gate on 64 input vectors at once. */
constexpr std::uint64_t eval_word( gate_function f, std::uint64_t a, std::uint64_t b ) noexcept
{
  switch ( f )
  {
  case gate_function::buf:    return a;
  case gate_function::inv:    return ~a;
  case gate_function::and_:   return a & b;
  case gate_function::or_:    return a | b;
  case gate_function::xor_:   return a ^ b;
  case gate_function::nand:   return ~( a & b );
  case gate_function::nor:    return ~( a | b );
  case gate_function::xnor:   return ~( a ^ b );
  case gate_function::const0: return 0u;
  case gate_function::const1: return ~std::uint64_t{ 0 };
  }
  return 0u;
}

/*! \brief Single-bit evaluation, kept separate from the word path for reference checks. */
constexpr bool eval_bit( gate_function f, bool a, bool b ) noexcept
{
  switch ( f )
  {
  case gate_function::buf:    return a;
  case gate_function::inv:    return !a;
  case gate_function::and_:   return a && b;
  case gate_function::or_:    return a || b;
  case gate_function::xor_:   return a != b;
  case gate_function::nand:   return !( a && b );
  case gate_function::nor:    return !( a || b );
  case gate_function::xnor:   return a == b;
  case gate_function::const0: return false;
  case gate_function::const1: return true;
  }
  return false;
}

} // namespace axcgp
