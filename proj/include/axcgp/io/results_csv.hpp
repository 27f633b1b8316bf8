/*!
  \file results_csv.hpp
  \brief Results table: one row per search run

      # schema: axcgp-results/1
      # generated: <timestamp>                      (optional)
      config,seed,evaluations,relative_power,wce_pct,mae_pct,er_pct,mre_pct,avg_pct,acc0,stddev,gauss_ok

  Error columns are relative percent (`avg_pct` is the magnitude of the signed
  mean), `stddev` is absolute, `gauss_ok` is `1`, `0` or `na`. Lines starting
  with `#` are comments. Reals use the shortest round-trip representation.
*/
#pragma once

#include "../analysis.hpp"
#include "../matrix.hpp"
#include "../metrics.hpp"
#include "serialization.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace axcgp
{

inline constexpr std::string_view results_schema = "axcgp-results/1";

inline constexpr std::array<std::string_view, 12> results_columns = {
    "config", "seed", "evaluations", "relative_power", "wce_pct", "mae_pct",
    "er_pct", "mre_pct", "avg_pct", "acc0", "stddev", "gauss_ok" };

struct results_row
{
  std::string config;
  std::uint64_t seed{ 0 };
  std::uint64_t evaluations{ 0 };
  double relative_power{ 0.0 };
  double wce_pct{ 0.0 };
  double mae_pct{ 0.0 };
  double er_pct{ 0.0 };
  double mre_pct{ 0.0 };
  double avg_pct{ 0.0 };
  int acc0{ 1 };
  double stddev{ 0.0 };
  std::string gauss_ok{ "na" };

  bool operator==( results_row const& ) const = default;
};

inline std::string format_real( double v )
{
  std::array<char, 64> buf{};
  auto const res = std::to_chars( buf.data(), buf.data() + buf.size(), v );
  return std::string( buf.data(), res.ptr );
}

/*! \brief `sigma` is the run's GAUSS constraint if it has one, else the report sigma, else none. */
inline results_row make_results_row( std::string const& config, run_result const& r,
                                     std::optional<gauss_spec> const& gauss )
{
  auto const rel = relative_profile( r.best_profile );
  results_row row;
  row.config = config;
  row.seed = r.seed;
  row.evaluations = r.evaluations_used;
  row.relative_power = r.relative_power();
  row.wce_pct = rel.wce;
  row.mae_pct = rel.mae;
  row.er_pct = rel.er;
  row.mre_pct = rel.mre;
  row.avg_pct = rel.avg;
  row.acc0 = r.best_profile.acc0 ? 1 : 0;
  row.stddev = error_stddev( r.best_profile );
  if ( gauss )
    row.gauss_ok = gauss_satisfied( r.best_profile, *gauss ) ? "1" : "0";
  return row;
}

inline std::optional<gauss_spec> report_gauss( constraint_set const& cs, std::optional<double> report_sigma )
{
  for ( auto const& c : cs.items )
  {
    if ( c.kind == metric::gauss )
      return c.gauss;
  }
  if ( report_sigma )
    return gauss_spec{ *report_sigma, gauss_amplitude::mass_normalized };
  return std::nullopt;
}

inline void write_results_header( std::ostream& os, std::optional<std::string> const& timestamp = std::nullopt )
{
  os << "# schema: " << results_schema << '\n';
  if ( timestamp )
    os << "# generated: " << *timestamp << '\n';
  for ( std::size_t i = 0; i < results_columns.size(); ++i )
    os << ( i ? "," : "" ) << results_columns[i];
  os << '\n';
}

inline void write_results_row( std::ostream& os, results_row const& r )
{
  std::ostringstream line;
  line << r.config << ',' << r.seed << ',' << r.evaluations << ',' << format_real( r.relative_power ) << ','
       << format_real( r.wce_pct ) << ',' << format_real( r.mae_pct ) << ',' << format_real( r.er_pct ) << ','
       << format_real( r.mre_pct ) << ',' << format_real( r.avg_pct ) << ',' << r.acc0 << ','
       << format_real( r.stddev ) << ',' << r.gauss_ok << '\n';
  os << line.str();
}

inline void write_results_csv( std::ostream& os, std::vector<results_row> const& rows,
                               std::optional<std::string> const& timestamp = std::nullopt )
{
  write_results_header( os, timestamp );
  for ( auto const& r : rows )
    write_results_row( os, r );
}

namespace detail
{

inline std::vector<std::string> split_csv_line( std::string const& line )
{
  std::vector<std::string> cells;
  std::string cell;
  for ( char c : line )
  {
    if ( c == ',' )
    {
      cells.push_back( std::move( cell ) );
      cell.clear();
    }
    else if ( c != '\r' )
      cell.push_back( c );
  }
  cells.push_back( std::move( cell ) );
  return cells;
}

template<class T>
T parse_cell( std::string const& s, std::string const& column, std::size_t line )
{
  T v{};
  auto const res = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( res.ec != std::errc{} || res.ptr != s.data() + s.size() )
    throw format_error( "results csv line " + std::to_string( line ) + ": column " + column + ": cannot parse '" + s +
                        "'" );
  return v;
}

} // namespace detail

/*! \brief Reads a results table; columns may appear in any order, missing ones are named in the error. */
inline std::vector<results_row> read_results_csv( std::istream& is )
{
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::map<std::string, std::size_t>> header;
  std::vector<results_row> rows;
  while ( std::getline( is, line ) )
  {
    ++line_no;
    if ( line.empty() || line[0] == '#' )
      continue;
    auto const cells = detail::split_csv_line( line );
    if ( !header )
    {
      header.emplace();
      for ( std::size_t i = 0; i < cells.size(); ++i )
        ( *header )[cells[i]] = i;
      for ( auto col : results_columns )
      {
        if ( !header->count( std::string( col ) ) )
          throw format_error( "results csv: missing column '" + std::string( col ) + "'" );
      }
      continue;
    }
    if ( cells.size() != header->size() )
      throw format_error( "results csv line " + std::to_string( line_no ) + ": expected " +
                          std::to_string( header->size() ) + " cells, got " + std::to_string( cells.size() ) );
    auto cell = [&]( std::string const& col ) -> std::string const& { return cells[header->at( col )]; };
    auto real = [&]( std::string const& col ) { return detail::parse_cell<double>( cell( col ), col, line_no ); };
    results_row r;
    r.config = cell( "config" );
    r.seed = detail::parse_cell<std::uint64_t>( cell( "seed" ), "seed", line_no );
    r.evaluations = detail::parse_cell<std::uint64_t>( cell( "evaluations" ), "evaluations", line_no );
    r.relative_power = real( "relative_power" );
    r.wce_pct = real( "wce_pct" );
    r.mae_pct = real( "mae_pct" );
    r.er_pct = real( "er_pct" );
    r.mre_pct = real( "mre_pct" );
    r.avg_pct = real( "avg_pct" );
    r.acc0 = detail::parse_cell<int>( cell( "acc0" ), "acc0", line_no );
    r.stddev = real( "stddev" );
    r.gauss_ok = cell( "gauss_ok" );
    rows.push_back( std::move( r ) );
  }
  if ( !header )
    throw format_error( "results csv: missing header row" );
  return rows;
}

inline pareto_point to_pareto_point( results_row const& r )
{
  pareto_point p;
  p.id = r.config + "/" + std::to_string( r.seed );
  p.config = r.config;
  p.relative_power = r.relative_power;
  p.wce = r.wce_pct;
  p.mae = r.mae_pct;
  p.er = r.er_pct;
  p.mre = r.mre_pct;
  p.avg = r.avg_pct;
  p.stddev = r.stddev;
  return p;
}

} // namespace axcgp
