/*!
  \file search.hpp
  \brief Error-oriented (1+λ) CGP search

  The fitness of a candidate is its power estimate when every error
  constraint holds, and +infinity otherwise. The search starts from the exact
  circuit, so the initial parent is feasible for any non-negative thresholds.
*/
#pragma once

#include "constraints.hpp"
#include "cost.hpp"
#include "golden.hpp"
#include "mutation.hpp"
#include "simulator.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace axcgp
{

inline constexpr double infeasible = std::numeric_limits<double>::infinity();

struct search_budget
{
  /*! \brief Offspring evaluations; the evaluation of the start circuit is not counted. */
  std::uint64_t max_evaluations{ 100000 };
  /*! \brief Checked between generations; 0 disables the limit. Not reproducible. */
  double wall_clock_secs{ 0.0 };
};

struct search_config
{
  golden_spec golden{};
  cgp_params params{};
  constraint_set constraints{};
  std::uint32_t lambda{ 4 };
  std::uint32_t mutations{ 5 };
  search_budget budget{};
  std::uint64_t seed{ 1 };
  cost_table costs = default_cost_table();
};

inline void validate_search_config( search_config const& cfg )
{
  validate_params( cfg.params );
  validate_constraints( cfg.constraints );
  validate_cost_table( cfg.costs );
  if ( cfg.lambda < 1u )
    throw std::invalid_argument( "search config: lambda must be at least 1" );
  if ( cfg.mutations < 1u )
    throw std::invalid_argument( "search config: at least one gene must be mutated" );
  if ( cfg.budget.wall_clock_secs < 0.0 )
    throw std::invalid_argument( "search config: negative wall-clock limit" );
  for ( auto f : cfg.params.gamma )
    cfg.costs.at( f );
}

struct evaluation
{
  double fitness{ infeasible };
  double cost{ 0.0 };
  error_profile profile{};

  bool feasible() const noexcept { return fitness != infeasible; }
};

/*! \brief Simulates candidates against fixed golden outputs; not thread-safe, one per run. */
class fitness_evaluator
{
public:
  fitness_evaluator( output_ints golden, constraint_set constraints, cost_table costs )
      : golden_( std::move( golden ) ),
        constraints_( std::move( constraints ) ),
        costs_( std::move( costs ) ),
        sim_( build_input_planes( static_cast<std::uint32_t>( std::countr_zero( golden_.values.size() ) ) ) )
  {
  }

  output_ints const& golden() const noexcept { return golden_; }

  evaluation evaluate( genome const& g, bool with_histogram = false )
  {
    evaluation e;
    auto const& out = sim_.run( g );
    extract_output_ints( out, g.params().num_outputs, cand_ );
    e.profile = error_profile_of( golden_, cand_, with_histogram || constraints_.needs_histogram() );
    e.cost = power_estimate( g, sim_.active(), costs_ );
    e.fitness = satisfies( e.profile, constraints_ ) ? e.cost : infeasible;
    return e;
  }

private:
  output_ints golden_;
  constraint_set constraints_;
  cost_table costs_;
  bit_simulator sim_;
  output_ints cand_;
};

inline output_ints golden_outputs( genome const& golden )
{
  auto const planes = build_input_planes( golden.params().num_inputs );
  return extract_output_ints( simulate( golden, planes ), golden.params().num_outputs );
}

/*! \brief Power estimate of the active circuit if all constraints hold, `infeasible` otherwise. */
inline double fitness( genome const& g, search_config const& cfg, output_ints const& golden_ints )
{
  require_valid( g );
  fitness_evaluator ev( golden_ints, cfg.constraints, cfg.costs );
  return ev.evaluate( g ).fitness;
}

struct trajectory_point
{
  std::uint64_t evaluation;
  double fitness;

  bool operator==( trajectory_point const& ) const = default;
};

struct run_result
{
  genome best_genome;
  double best_cost{ 0.0 };
  double golden_cost{ 0.0 };
  error_profile best_profile{};
  std::vector<trajectory_point> trajectory;
  std::uint64_t evaluations_used{ 0 };
  std::uint64_t seed{ 0 };

  double relative_power() const noexcept { return best_cost / golden_cost; }
};

/*! \brief Called once per offspring evaluation, in evaluation order. */
using evaluation_observer = std::function<void( genome const&, evaluation const& )>;

inline run_result evolve( search_config const& cfg, evaluation_observer const& observer = {} )
{
  validate_search_config( cfg );
  auto params = std::make_shared<cgp_params const>( cfg.params );
  auto const golden = generate_golden( cfg.golden, params );

  fitness_evaluator ev( golden_outputs( golden ), cfg.constraints, cfg.costs );
  auto const start = ev.evaluate( golden );
  if ( !start.feasible() )
    throw std::runtime_error( "constraint set '" + cfg.constraints.name + "' rejects the exact circuit" );
  if ( !( start.cost > 0.0 ) )
    throw std::runtime_error( "golden circuit has zero cost under the cost table" );

  auto rng = make_rng( cfg.seed );
  genome parent = golden;
  double parent_fitness = start.fitness;

  run_result res{ golden, start.cost, start.cost, {}, { { 0u, start.fitness } }, 0u, cfg.seed };

  auto const t0 = std::chrono::steady_clock::now();
  auto const budget = cfg.budget.max_evaluations;
  while ( res.evaluations_used < budget )
  {
    if ( cfg.budget.wall_clock_secs > 0.0 &&
         std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count() >= cfg.budget.wall_clock_secs )
      break;

    auto const offspring = std::min<std::uint64_t>( cfg.lambda, budget - res.evaluations_used );
    std::optional<genome> best;
    double best_fitness = infeasible;
    std::uint64_t best_index = 0;
    for ( std::uint64_t i = 0; i < offspring; ++i )
    {
      auto child = mutate( parent, cfg.mutations, rng );
      auto const e = ev.evaluate( child );
      ++res.evaluations_used;
      if ( observer )
        observer( child, e );
      if ( !best || e.fitness < best_fitness )
      {
        best_fitness = e.fitness;
        best_index = res.evaluations_used;
        best = std::move( child );
      }
    }
    if ( best && best_fitness <= parent_fitness )
    {
      if ( best_fitness < parent_fitness )
        res.trajectory.push_back( { best_index, best_fitness } );
      parent = std::move( *best );
      parent_fitness = best_fitness;
    }
  }

  auto final_eval = ev.evaluate( parent, true );
  res.best_genome = std::move( parent );
  res.best_cost = final_eval.cost;
  res.best_profile = std::move( final_eval.profile );
  return res;
}

} // namespace axcgp
