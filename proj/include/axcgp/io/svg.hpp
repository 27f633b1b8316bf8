/*!
  \file svg.hpp
  \brief Static trade-off plot: all circuits as dots, the Pareto front as a step line
*/
#pragma once

#include "../analysis.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace axcgp
{

inline std::string tradeoff_svg( std::vector<pareto_point> const& points, std::vector<pareto_point> const& front,
                                 error_axis axis, std::string const& title )
{
  constexpr double width = 480.0, height = 360.0, margin = 50.0;
  double max_x = 0.0, max_y = 0.0;
  for ( auto const& p : points )
  {
    max_x = std::max( max_x, p.error( axis ) );
    max_y = std::max( max_y, p.relative_power );
  }
  max_x = max_x > 0.0 ? max_x * 1.05 : 1.0;
  max_y = max_y > 0.0 ? max_y * 1.05 : 1.0;
  auto sx = [&]( double v ) { return margin + v / max_x * ( width - 2.0 * margin ); };
  auto sy = [&]( double v ) { return height - margin - v / max_y * ( height - 2.0 * margin ); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << to_string( axis ) << ( axis == error_axis::stddev ? "" : " [%]" ) << " (max " << max_x / 1.05 << ")</text>\n";
  os << "<text x=\"14\" y=\"" << height / 2 << "\" transform=\"rotate(-90 14 " << height / 2
     << ")\" text-anchor=\"middle\" font-size=\"12\">relative power (max " << max_y / 1.05 << ")</text>\n";

  for ( auto const& p : points )
    os << "<circle cx=\"" << sx( p.error( axis ) ) << "\" cy=\"" << sy( p.relative_power )
       << "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.4\"/>\n";

  auto sorted = front;
  std::sort( sorted.begin(), sorted.end(),
             [axis]( auto const& a, auto const& b ) { return a.error( axis ) < b.error( axis ); } );
  if ( !sorted.empty() )
  {
    os << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
    for ( std::size_t i = 0; i < sorted.size(); ++i )
    {
      if ( i > 0 )
        os << sx( sorted[i].error( axis ) ) << ',' << sy( sorted[i - 1].relative_power ) << ' ';
      os << sx( sorted[i].error( axis ) ) << ',' << sy( sorted[i].relative_power ) << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace axcgp
