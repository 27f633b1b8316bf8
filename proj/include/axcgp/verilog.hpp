/*!
  \file verilog.hpp
  \brief Structural Verilog-2001 export of a netlist
*/
#pragma once

#include "netlist.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace axcgp
{

namespace detail
{

inline std::string verilog_signal( netlist const& nl, std::uint32_t s )
{
  if ( s < nl.num_inputs )
    return "x[" + std::to_string( s ) + "]";
  return "g" + std::to_string( s - nl.num_inputs );
}

inline std::string verilog_expression( netlist const& nl, gate const& gt )
{
  auto const a = verilog_signal( nl, gt.fanins[0] );
  auto const b = verilog_signal( nl, gt.fanins[1] );
  switch ( gt.function )
  {
  case gate_function::buf:    return a;
  case gate_function::inv:    return "~" + a;
  case gate_function::and_:   return a + " & " + b;
  case gate_function::or_:    return a + " | " + b;
  case gate_function::xor_:   return a + " ^ " + b;
  case gate_function::nand:   return "~(" + a + " & " + b + ")";
  case gate_function::nor:    return "~(" + a + " | " + b + ")";
  case gate_function::xnor:   return "~(" + a + " ^ " + b + ")";
  case gate_function::const0: return "1'b0";
  case gate_function::const1: return "1'b1";
  }
  return "1'b0";
}

} // namespace detail

/*! \brief One module, input bus `x`, output bus `y`, one wire and one assign per gate. */
inline std::string export_verilog( netlist const& nl, std::string const& module_name )
{
  if ( nl.outputs.empty() )
    throw std::invalid_argument( "netlist has no outputs" );
  if ( nl.num_inputs == 0u )
    throw std::invalid_argument( "netlist has no inputs" );
  if ( auto err = check_netlist( nl ); !err.empty() )
    throw std::invalid_argument( "export_verilog: " + err );

  std::ostringstream os;
  os << "module " << module_name << "(x, y);\n";
  os << "  input [" << nl.num_inputs - 1u << ":0] x;\n";
  os << "  output [" << nl.outputs.size() - 1u << ":0] y;\n";
  for ( std::size_t k = 0; k < nl.gates.size(); ++k )
    os << "  wire g" << k << ";\n";
  for ( std::size_t k = 0; k < nl.gates.size(); ++k )
    os << "  assign g" << k << " = " << detail::verilog_expression( nl, nl.gates[k] ) << ";\n";
  for ( std::size_t k = 0; k < nl.outputs.size(); ++k )
    os << "  assign y[" << k << "] = " << detail::verilog_signal( nl, nl.outputs[k] ) << ";\n";
  os << "endmodule\n";
  return os.str();
}

} // namespace axcgp
