/*!
  \file constraints.hpp
  \brief Conjunction of error thresholds a feasible candidate must meet

  Thresholds are given in relative percent, as reported by
  `relative_profile`. Comparisons are inclusive (`<=`) and are carried out on
  the integer error sums scaled by powers of two, so a boundary value such as
  `ER <= 25%` with exactly a quarter of the inputs wrong is accepted.
*/
#pragma once

#include "metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

enum class metric
{
  wce,
  mae,
  er,
  mre,
  acc0,
  avg,
  gauss
};

inline std::string to_string( metric m )
{
  switch ( m )
  {
  case metric::wce:   return "WCE";
  case metric::mae:   return "MAE";
  case metric::er:    return "ER";
  case metric::mre:   return "MRE";
  case metric::acc0:  return "ACC0";
  case metric::avg:   return "AVG";
  case metric::gauss: return "GAUSS";
  }
  return "?";
}

inline metric metric_from_string( std::string const& s )
{
  for ( auto m : { metric::wce, metric::mae, metric::er, metric::mre, metric::acc0, metric::avg, metric::gauss } )
  {
    if ( to_string( m ) == s )
      return m;
  }
  throw std::invalid_argument( "unknown metric '" + s + "'" );
}

struct constraint
{
  metric kind{ metric::wce };
  /*! \brief Relative percent; ignored for ACC0 (must hold) and GAUSS (uses `gauss`). */
  double threshold{ 0.0 };
  gauss_spec gauss{};

  bool operator==( constraint const& ) const = default;
};

struct constraint_set
{
  std::string name;
  std::vector<constraint> items;

  bool needs_histogram() const noexcept
  {
    for ( auto const& c : items )
    {
      if ( c.kind == metric::gauss )
        return true;
    }
    return false;
  }

  bool has( metric m ) const noexcept
  {
    for ( auto const& c : items )
    {
      if ( c.kind == m )
        return true;
    }
    return false;
  }

  bool operator==( constraint_set const& ) const = default;
};

inline void validate_constraints( constraint_set const& cs )
{
  if ( cs.items.empty() )
    throw std::invalid_argument( "constraint set '" + cs.name + "' is empty" );
  for ( std::size_t i = 0; i < cs.items.size(); ++i )
  {
    auto const& c = cs.items[i];
    for ( std::size_t j = i + 1; j < cs.items.size(); ++j )
    {
      if ( cs.items[j].kind == c.kind )
        throw std::invalid_argument( "constraint set '" + cs.name + "' repeats metric " + to_string( c.kind ) );
    }
    if ( !std::isfinite( c.threshold ) || c.threshold < 0.0 )
      throw std::invalid_argument( "constraint set '" + cs.name + "': threshold for " + to_string( c.kind ) +
                                   " must be finite and non-negative" );
    if ( c.kind == metric::gauss && ( !( c.gauss.sigma >= 1.0 ) || !std::isfinite( c.gauss.sigma ) ) )
      throw std::invalid_argument( "constraint set '" + cs.name + "': gauss sigma must be at least 1" );
  }
}

inline bool satisfies( error_profile const& p, constraint const& c )
{
  auto const inputs = p.num_vectors();
  auto const range = p.output_range();
  switch ( c.kind )
  {
  case metric::wce:
    return 100.0 * static_cast<double>( p.wce ) <= c.threshold * range;
  case metric::mae:
    return 100.0 * static_cast<double>( p.abs_error_sum ) <= c.threshold * range * inputs;
  case metric::er:
    return 100.0 * static_cast<double>( p.error_count ) <= c.threshold * inputs;
  case metric::mre:
    return 100.0 * p.mre <= c.threshold;
  case metric::acc0:
    return p.acc0;
  case metric::avg:
  {
    auto const s = p.signed_error_sum;
    return 100.0 * static_cast<double>( s < 0 ? -s : s ) <= c.threshold * range * inputs;
  }
  case metric::gauss:
    return gauss_satisfied( p, c.gauss );
  }
  return false;
}

inline bool satisfies( error_profile const& p, constraint_set const& cs )
{
  for ( auto const& c : cs.items )
  {
    if ( !satisfies( p, c ) )
      return false;
  }
  return true;
}

} // namespace axcgp
