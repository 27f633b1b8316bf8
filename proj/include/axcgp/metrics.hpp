/*!
  \file metrics.hpp
  \brief Arithmetic error metrics of a candidate against the golden circuit

  The signed error of input vector `x` is `e(x) = int(f_G(x)) - int(f_C(x))`.
  Sums are carried as integers; MAE and AVG are those sums divided by `2^n`,
  which is exact in binary floating point.
*/
#pragma once

#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace axcgp
{

struct error_profile
{
  std::uint32_t input_bits{ 0 };
  std::uint32_t output_bits{ 0 };

  std::uint64_t wce{ 0 };
  std::uint64_t abs_error_sum{ 0 };
  std::int64_t signed_error_sum{ 0 };
  std::uint64_t error_count{ 0 };
  double squared_error_sum{ 0.0 };
  double mre{ 0.0 };
  bool acc0{ true };

  /*! \brief Signed error -> number of inputs; only filled when requested. */
  std::map<std::int64_t, std::uint64_t> histogram;
  bool has_histogram{ false };

  double num_vectors() const noexcept { return std::ldexp( 1.0, static_cast<int>( input_bits ) ); }
  double output_range() const noexcept { return std::ldexp( 1.0, static_cast<int>( output_bits ) ); }

  double mae() const noexcept { return static_cast<double>( abs_error_sum ) / num_vectors(); }
  double er() const noexcept { return static_cast<double>( error_count ) / num_vectors(); }
  double avg() const noexcept { return static_cast<double>( signed_error_sum ) / num_vectors(); }
};

inline error_profile error_profile_of( output_ints const& golden, output_ints const& cand, bool with_histogram = true )
{
  if ( golden.values.size() != cand.values.size() )
    throw std::invalid_argument( "error_profile: golden has " + std::to_string( golden.values.size() ) +
                                 " outputs, candidate " + std::to_string( cand.values.size() ) );
  if ( golden.width != cand.width )
    throw std::invalid_argument( "error_profile: output widths differ" );
  if ( golden.width > 32u )
    throw std::invalid_argument( "error_profile: outputs wider than 32 bits are not supported" );
  auto const n = golden.values.size();
  if ( n == 0u || ( n & ( n - 1u ) ) != 0u )
    throw std::invalid_argument( "error_profile: output count must be a power of two" );

  error_profile p;
  p.input_bits = static_cast<std::uint32_t>( std::countr_zero( n ) );
  p.output_bits = golden.width;
  p.has_histogram = with_histogram;

  unsigned __int128 sq = 0;
  double mre_sum = 0.0;
  auto const* g = golden.values.data();
  auto const* c = cand.values.data();
  for ( std::size_t k = 0; k < n; ++k )
  {
    auto const e = static_cast<std::int64_t>( g[k] ) - static_cast<std::int64_t>( c[k] );
    if ( e == 0 )
      continue;
    auto const a = static_cast<std::uint64_t>( e < 0 ? -e : e );
    p.wce = std::max( p.wce, a );
    p.abs_error_sum += a;
    p.signed_error_sum += e;
    ++p.error_count;
    sq += static_cast<unsigned __int128>( a ) * a;
    mre_sum += static_cast<double>( a ) / static_cast<double>( std::max<std::uint64_t>( g[k], 1u ) );
    if ( g[k] == 0u )
      p.acc0 = false;
    if ( with_histogram )
      ++p.histogram[e];
  }
  if ( with_histogram && p.error_count < n )
    p.histogram[0] = n - p.error_count;
  p.squared_error_sum = static_cast<double>( sq );
  p.mre = mre_sum / p.num_vectors();
  return p;
}

/*! \brief Metrics relative to the output range `2^m`, in percent; ER and MRE are scaled by 100. */
struct relative_errors
{
  double wce{ 0.0 };
  double mae{ 0.0 };
  double er{ 0.0 };
  double mre{ 0.0 };
  /*! \brief Magnitude of the signed mean. */
  double avg{ 0.0 };
};

inline relative_errors relative_profile( error_profile const& p )
{
  auto const range = p.output_range();
  return { 100.0 * static_cast<double>( p.wce ) / range, 100.0 * p.mae() / range, 100.0 * p.er(), 100.0 * p.mre,
           100.0 * std::fabs( p.avg() ) / range };
}

/*! \brief Population standard deviation of the signed error over all `2^n` inputs. */
inline double error_stddev( error_profile const& p )
{
  auto const avg = p.avg();
  auto const var = p.squared_error_sum / p.num_vectors() - avg * avg;
  return var > 0.0 ? std::sqrt( var ) : 0.0;
}

enum class gauss_amplitude
{
  /*! \brief Envelope mass over all integers equals `2^n`. */
  mass_normalized,
  /*! \brief Envelope mass equals the number of erroneous inputs. */
  count_normalized
};

struct gauss_spec
{
  double sigma{ 1.0 };
  gauss_amplitude amplitude{ gauss_amplitude::mass_normalized };

  bool operator==( gauss_spec const& ) const = default;
};

/*! \brief Compares the non-zero error histogram against a zero-mean Gaussian envelope.

  The error axis is cut into half-open bins `[(b-0.5)σ, (b+0.5)σ)`. In every
  bin, the average count per integer error value (error 0 excluded) must not
  exceed the average envelope value `A·exp(-e²/2σ²)` over the same integers.
*/
inline bool gauss_satisfied( error_profile const& p, gauss_spec const& spec )
{
  if ( !( spec.sigma >= 1.0 ) || !std::isfinite( spec.sigma ) )
    throw std::invalid_argument( "gauss constraint: sigma must be finite and at least 1" );
  if ( !p.has_histogram )
    throw std::logic_error( "gauss constraint: profile was computed without a histogram" );
  if ( p.error_count == 0u )
    return true;

  auto const sigma = spec.sigma;
  auto const density = [sigma]( double e ) { return std::exp( -e * e / ( 2.0 * sigma * sigma ) ); };

  double z = 1.0;
  for ( std::int64_t e = 1;; ++e )
  {
    auto const t = density( static_cast<double>( e ) );
    z += 2.0 * t;
    if ( t < 1e-300 )
      break;
  }
  auto const mass = spec.amplitude == gauss_amplitude::mass_normalized ? p.num_vectors()
                                                                       : static_cast<double>( p.error_count );
  auto const amplitude = mass / z;

  auto bin_of = [sigma]( std::int64_t e ) {
    auto b = static_cast<std::int64_t>( std::floor( static_cast<double>( e ) / sigma + 0.5 ) );
    while ( static_cast<double>( e ) < ( static_cast<double>( b ) - 0.5 ) * sigma )
      --b;
    while ( static_cast<double>( e ) >= ( static_cast<double>( b ) + 0.5 ) * sigma )
      ++b;
    return b;
  };

  std::map<std::int64_t, std::uint64_t> bins;
  for ( auto const& [e, count] : p.histogram )
  {
    if ( e != 0 )
      bins[bin_of( e )] += count;
  }

  for ( auto const& [b, count] : bins )
  {
    auto const lo = static_cast<std::int64_t>( std::ceil( ( static_cast<double>( b ) - 0.5 ) * sigma ) );
    auto const hi = static_cast<std::int64_t>( std::ceil( ( static_cast<double>( b ) + 0.5 ) * sigma ) ) - 1;
    double envelope = 0.0;
    std::int64_t points = 0;
    for ( auto e = lo; e <= hi; ++e )
    {
      if ( e == 0 )
        continue;
      envelope += amplitude * density( static_cast<double>( e ) );
      ++points;
    }
    if ( points == 0 )
      continue;
    if ( static_cast<double>( count ) / static_cast<double>( points ) > envelope / static_cast<double>( points ) )
      return false;
  }
  return true;
}

/*! \brief Two-column CSV `error,count`, ascending by error. */
inline std::string histogram_csv( error_profile const& p )
{
  std::ostringstream os;
  os << "error,count\n";
  for ( auto const& [e, count] : p.histogram )
    os << e << ',' << count << '\n';
  return os.str();
}

} // namespace axcgp
