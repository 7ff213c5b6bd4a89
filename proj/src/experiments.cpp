// SPDX-License-Identifier: Apache-2.0
//
// satsec - secure multibeam satellite downlink design via joint power
// control and beamforming with per-user secrecy constraints
// Copyright (C) 2026 the satsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "satsec/experiments.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "satsec/rng.hpp"
#include "satsec/version.hpp"

namespace satsec {

const char* to_string(fixed_weights_kind k) {
  switch (k) {
  case fixed_weights_kind::zfbf: return "zfbf";
  case fixed_weights_kind::matched_filter: return "matched_filter";
  case fixed_weights_kind::uniform: return "uniform";
  }
  return "?";
}

beamforming_matrix make_fixed_weights(const channel_realization& chan,
                                      fixed_weights_kind kind) {
  switch (kind) {
  case fixed_weights_kind::zfbf:
    return zfbf_weights(chan);
  case fixed_weights_kind::matched_filter: {
    beamforming_matrix bf;
    bf.W.set_size(chan.n_elements(), chan.n_beams());
    for (arma::uword k = 0; k < chan.n_beams(); ++k) {
      const arma::cx_vec w = arma::conj(chan.H.col(k));
      const double n = arma::norm(w);
      if (!(n > 0.0))
        throw zero_gain_error(k);
      bf.W.col(k) = w / n;
    }
    return bf;
  }
  case fixed_weights_kind::uniform: {
    beamforming_matrix bf;
    bf.W.set_size(chan.n_elements(), chan.n_beams());
    bf.W.fill(std::complex<double>(
        1.0 / std::sqrt(static_cast<double>(chan.n_elements())), 0.0));
    return bf;
  }
  }
  throw std::logic_error("unknown fixed weights kind");
}

std::string scheme_name(const scheme& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, scheme_fixed_bf>)
          return std::string("fixed_bf_") + to_string(v.weights);
        else if constexpr (std::is_same_v<T, scheme_joint_zf_nulling>)
          return "joint_zf_nulling";
        else if constexpr (std::is_same_v<T, scheme_zfbf_unknown_csi>)
          return "zfbf_unknown_csi";
        else if constexpr (std::is_same_v<T, scheme_joint_imperfect_csi>)
          return "joint_imperfect_csi";
        else
          return std::string("fixed_power_") + to_string(v.weights);
      },
      s);
}

namespace {

trial_result infeasible_trial(arma::uword n_beams, std::string why) {
  trial_result r;
  r.p = arma::zeros<arma::vec>(n_beams);
  r.total = 0.0;
  r.feasible = false;
  r.converged = false;
  r.failure = std::move(why);
  return r;
}

trial_result from_solution(power_solution&& sol) {
  trial_result r;
  r.p = sol.p;
  r.total = arma::accu(sol.p);
  r.converged = sol.converged;
  r.feasible = sol.converged;
  r.iterations = sol.iterations;
  r.trace = std::move(sol.trace);
  if (!r.converged)
    r.failure = "did not converge within max_iter";
  return r;
}

arma::cx_vec synthesize_estimate(const channel_realization& chan,
                                 double error_stddev, std::uint64_t seed) {
  arma::cx_vec h_hat = chan.h_e;
  const double s = error_stddev / std::sqrt(2.0);
  for (arma::uword m = 0; m < h_hat.n_elem; ++m) {
    const std::complex<double> delta(
        s * rng::normal(seed, rng::kStreamEstimationErrorRe, m, 0),
        s * rng::normal(seed, rng::kStreamEstimationErrorIm, m, 0));
    h_hat(m) -= delta; // true channel = estimate + error
  }
  return h_hat;
}

} // namespace

trial_result solve_instance(const channel_realization& chan, const scheme& s,
                            const arma::vec& gamma, const solve_options& opts,
                            std::uint64_t chan_seed) {
  const arma::uword n_beams = chan.n_beams();
  if (gamma.n_elem != n_beams)
    throw std::invalid_argument("target vector length does not match beam count");

  try {
    if (const auto* fb = std::get_if<scheme_fixed_bf>(&s)) {
      if (!fb->W_fixed && fb->weights == fixed_weights_kind::zfbf &&
          chan.n_elements() < n_beams)
        return infeasible_trial(n_beams, "zero-forcing needs M >= K");
      const beamforming_matrix W =
          fb->W_fixed ? *fb->W_fixed : make_fixed_weights(chan, fb->weights);
      const auto co = coefficients(chan, W, gamma, perfect_csi{chan.h_e},
                                   csi_variant::fixed_bf);
      return from_solution(fixed_point_solve(co, opts));
    }

    if (std::holds_alternative<scheme_joint_zf_nulling>(s)) {
      if (chan.n_elements() <= n_beams)
        return infeasible_trial(n_beams, "joint nulling needs M > K");
      const beamforming_matrix W = zf_nulling_weights(chan);
      trial_result r;
      r.p = closed_form_power(chan, W, gamma);
      r.total = arma::accu(r.p);
      r.feasible = true;
      r.converged = true;
      if (opts.trace_stride > 0)
        r.trace.push_back({0, r.p, r.total});
      return r;
    }

    if (const auto* uc = std::get_if<scheme_zfbf_unknown_csi>(&s)) {
      if (chan.n_elements() < n_beams)
        return infeasible_trial(n_beams, "zero-forcing needs M >= K");
      const beamforming_matrix W = zfbf_weights(chan);
      arma::cx_mat R_hat;
      if (uc->R_hat_e) {
        R_hat = *uc->R_hat_e;
      } else {
        // Isotropic prior implied by the attenuation-times-phase model.
        const double alpha_e_sq =
            arma::accu(arma::square(arma::abs(chan.h_e))) /
            static_cast<double>(chan.n_elements());
        R_hat = alpha_e_sq *
                arma::eye<arma::cx_mat>(chan.n_elements(), chan.n_elements());
      }
      const auto co = coefficients(chan, W, gamma, covariance_csi{R_hat},
                                   csi_variant::unknown_csi);
      return from_solution(fixed_point_solve(co, opts));
    }

    if (const auto* ic = std::get_if<scheme_joint_imperfect_csi>(&s)) {
      if (chan.n_elements() <= n_beams)
        return infeasible_trial(n_beams, "joint nulling needs M > K");
      const arma::cx_vec h_hat =
          ic->h_hat_e ? *ic->h_hat_e
                      : synthesize_estimate(chan, ic->error_stddev, chan_seed);
      arma::cx_mat R_delta;
      if (ic->R_delta_e)
        R_delta = *ic->R_delta_e;
      else
        R_delta = ic->error_stddev * ic->error_stddev *
                  arma::eye<arma::cx_mat>(chan.n_elements(), chan.n_elements());
      const beamforming_matrix W = zf_nulling_weights_estimated(chan, h_hat);
      const auto co = coefficients(chan, W, gamma, estimated_csi{h_hat, R_delta},
                                   csi_variant::imperfect_csi);
      return from_solution(fixed_point_solve(co, opts));
    }

    const auto& fp = std::get<scheme_fixed_power_fixed_bf>(s);
    if (!fp.W_fixed && fp.weights == fixed_weights_kind::zfbf &&
        chan.n_elements() < n_beams)
      return infeasible_trial(n_beams, "zero-forcing needs M >= K");
    const beamforming_matrix W =
        fp.W_fixed ? *fp.W_fixed : make_fixed_weights(chan, fp.weights);
    arma::vec p;
    if (fp.p_fixed) {
      if (fp.p_fixed->n_elem != n_beams)
        throw std::invalid_argument("fixed power vector length does not match beam count");
      p = *fp.p_fixed;
    } else {
      p = arma::vec(n_beams,
                    arma::fill::value(fp.p_total_watts /
                                      static_cast<double>(n_beams)));
    }
    const sinr_report rep = evaluate_sinr(chan, W, p);
    trial_result r;
    r.p = p;
    r.total = arma::accu(p);
    r.converged = true;
    r.feasible = arma::all(rep.gamma_s >= gamma);
    if (!r.feasible)
      r.failure = "secrecy targets not met at the fixed power";
    if (opts.trace_stride > 0)
      r.trace.push_back({0, p, r.total});
    return r;
  } catch (const infeasible_error& e) {
    return infeasible_trial(n_beams, e.what());
  } catch (const zero_gain_error& e) {
    return infeasible_trial(n_beams, e.what());
  }
}

// ---- config -----------------------------------------------------------------

attenuation_profile experiment_config::attenuation() const {
  attenuation_profile prof;
  prof.alpha = alpha_vec.n_elem
                   ? alpha_vec
                   : arma::vec(n_beams, arma::fill::value(alpha));
  prof.alpha_e = alpha_e;
  return prof;
}

void experiment_config::validate() const {
  if (n_elements < 1 || n_beams < 1)
    throw std::invalid_argument("need at least one antenna element and one beam");
  if (n_trials < 1)
    throw std::invalid_argument("n_trials must be >= 1");
  if (schemes.empty())
    throw std::invalid_argument("at least one scheme is required");
  if (gamma0_db.empty())
    throw std::invalid_argument("at least one gamma0_db value is required");
  if (alpha_vec.n_elem && alpha_vec.n_elem != n_beams)
    throw std::invalid_argument("alpha_vec length must equal the beam count");
  std::visit(
      [&](const auto& sw) {
        using T = std::decay_t<decltype(sw)>;
        if constexpr (std::is_same_v<T, sweep_antenna_elements> ||
                      std::is_same_v<T, sweep_beams>) {
          if (sw.values.empty())
            throw std::invalid_argument("sweep range must be nonempty");
          if constexpr (std::is_same_v<T, sweep_beams>) {
            if (alpha_vec.n_elem)
              throw std::invalid_argument(
                  "beam-count sweeps need a common alpha, not alpha_vec");
          }
        } else if constexpr (std::is_same_v<T, sweep_eaves_atten>) {
          if (sw.degradation_db.empty())
            throw std::invalid_argument("sweep range must be nonempty");
        } else if constexpr (std::is_same_v<T, sweep_secrecy_target>) {
          if (sw.gamma0_db.empty())
            throw std::invalid_argument("sweep range must be nonempty");
        } else if constexpr (std::is_same_v<T, sweep_user_atten>) {
          if (sw.alpha_values.empty())
            throw std::invalid_argument("sweep range must be nonempty");
          if (sw.user >= n_beams)
            throw std::invalid_argument("swept user index out of range");
        } else if constexpr (std::is_same_v<T, sweep_csi_comparison>) {
          if (sw.p_tot_watts.empty())
            throw std::invalid_argument("sweep range must be nonempty");
        } else if constexpr (std::is_same_v<T, sweep_air_interface>) {
          sw.table.validate();
        } else if constexpr (std::is_same_v<T, sweep_max_users>) {
          if (!(sw.p_tot_watts > 0.0))
            throw std::invalid_argument("power budget must be positive (watts)");
        }
      },
      sweep);
}

std::string sweep_param_name(const sweep_spec& sweep) {
  return std::visit(
      [](const auto& sw) -> std::string {
        using T = std::decay_t<decltype(sw)>;
        if constexpr (std::is_same_v<T, sweep_iter_trace>) return "iteration";
        else if constexpr (std::is_same_v<T, sweep_antenna_elements>) return "n_elements";
        else if constexpr (std::is_same_v<T, sweep_beams>) return "n_beams";
        else if constexpr (std::is_same_v<T, sweep_eaves_atten>) return "eaves_degradation_db";
        else if constexpr (std::is_same_v<T, sweep_secrecy_target>) return "gamma0_db";
        else if constexpr (std::is_same_v<T, sweep_user_atten>) return "user_alpha";
        else if constexpr (std::is_same_v<T, sweep_csi_comparison>) return "p_tot_watts";
        else if constexpr (std::is_same_v<T, sweep_air_interface>) return "efficiency_bps_hz";
        else return "n_beams";
      },
      sweep);
}

// ---- table ------------------------------------------------------------------

std::string format_cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string result_table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += columns[i];
    out += (i + 1 < columns.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  return out;
}

std::string result_table::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = kOutputSchemaVersion;
  doc["metadata"] = metadata_json.empty()
                        ? nlohmann::json::object()
                        : nlohmann::json::parse(metadata_json);
  doc["columns"] = columns;
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

// ---- internals ----------------------------------------------------------------

namespace {

arma::uword resolve_threads(arma::uword requested) {
  if (requested > 0)
    return requested;
  if (const char* env = std::getenv("SATSEC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<arma::uword>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(t) for t in [0, n); results must be written into per-index slots.
void run_indexed(arma::uword n, arma::uword threads,
                 const std::function<void(arma::uword)>& fn) {
  threads = std::min<arma::uword>(std::max<arma::uword>(threads, 1), n);
  if (threads <= 1) {
    for (arma::uword t = 0; t < n; ++t)
      fn(t);
    return;
  }
  std::atomic<arma::uword> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (arma::uword w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const arma::uword t = next.fetch_add(1);
        if (t >= n)
          return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error)
            first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool)
    th.join();
  if (first_error)
    std::rethrow_exception(first_error);
}

struct aggregate {
  arma::uword n = 0, n_feasible = 0;
  double mean_total = 0.0, std_total = 0.0;
  arma::vec mean_p;
};

aggregate reduce(const std::vector<trial_result>& trials, arma::uword n_beams) {
  aggregate agg;
  agg.n = trials.size();
  agg.mean_p = arma::zeros<arma::vec>(n_beams);
  double sum = 0.0, sumsq = 0.0;
  for (const trial_result& t : trials) {
    if (!t.feasible)
      continue;
    ++agg.n_feasible;
    sum += t.total;
    sumsq += t.total * t.total;
    agg.mean_p += t.p;
  }
  if (agg.n_feasible > 0) {
    agg.mean_total = sum / static_cast<double>(agg.n_feasible);
    agg.mean_p /= static_cast<double>(agg.n_feasible);
  }
  if (agg.n_feasible > 1) {
    const double n = static_cast<double>(agg.n_feasible);
    const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
    agg.std_total = std::sqrt(var);
  }
  return agg;
}

// One sweep point: a fully resolved single-configuration Monte Carlo cell.
struct sweep_cell {
  double sweep_value = 0.0;
  arma::uword n_elements = 0, n_beams = 0;
  attenuation_profile atten;
  double gamma0_db = 0.0;
  std::string mapping; // air-interface sweeps only
};

std::vector<trial_result> run_cell(const experiment_config& config,
                                   const sweep_cell& cell, const scheme& s,
                                   arma::uword threads) {
  const double sigma2 = config.sigma2_watts();
  const arma::vec gamma(cell.n_beams,
                        arma::fill::value(db_to_linear(cell.gamma0_db)));
  solve_options opts = config.solver;
  opts.trace_stride = 0;
  std::vector<trial_result> trials(config.n_trials);
  run_indexed(config.n_trials, threads, [&](arma::uword t) {
    const std::uint64_t seed = config.base_seed ^ static_cast<std::uint64_t>(t);
    const channel_realization chan =
        sample_channel(seed, cell.n_elements, cell.n_beams, cell.atten, sigma2);
    trials[t] = solve_instance(chan, s, gamma, opts, seed);
  });
  return trials;
}

nlohmann::json scheme_to_json(const scheme& s) {
  nlohmann::json j;
  j["name"] = scheme_name(s);
  if (const auto* uc = std::get_if<scheme_zfbf_unknown_csi>(&s))
    j["r_hat_e"] = uc->R_hat_e ? "explicit" : "isotropic_default";
  if (const auto* ic = std::get_if<scheme_joint_imperfect_csi>(&s)) {
    j["error_stddev"] = ic->error_stddev;
    j["estimate"] = ic->h_hat_e ? "explicit" : "synthesized";
  }
  if (const auto* fp = std::get_if<scheme_fixed_power_fixed_bf>(&s))
    j["p_total_watts"] = fp->p_total_watts;
  return j;
}

nlohmann::json config_to_json(const experiment_config& config) {
  nlohmann::json j;
  j["library_version"] = kLibraryVersion;
  j["generator"] = rng::kGeneratorName;
  j["n_elements"] = config.n_elements;
  j["n_beams"] = config.n_beams;
  j["n_trials"] = config.n_trials;
  j["base_seed"] = config.base_seed;
  j["alpha"] = config.alpha;
  if (config.alpha_vec.n_elem)
    j["alpha_vec"] = std::vector<double>(config.alpha_vec.begin(),
                                         config.alpha_vec.end());
  j["alpha_e"] = config.alpha_e;
  j["sigma2_dbm"] = config.sigma2_dbm;
  j["sigma2_watts"] = config.sigma2_watts();
  j["gamma0_db"] = config.gamma0_db;
  j["sweep"] = sweep_param_name(config.sweep);
  j["tolerance"] = config.solver.tol;
  j["max_iter"] = config.solver.max_iter;
  nlohmann::json schemes = nlohmann::json::array();
  for (const scheme& s : config.schemes)
    schemes.push_back(scheme_to_json(s));
  j["schemes"] = std::move(schemes);
  return j;
}

std::vector<std::string> base_columns(arma::uword max_beams) {
  std::vector<std::string> cols = {"sweep_param",      "sweep_value",
                                   "gamma0_db",        "scheme",
                                   "n_trials",         "n_feasible",
                                   "feasibility_rate", "mean_total_power_w",
                                   "std_total_power_w"};
  for (arma::uword k = 0; k < max_beams; ++k)
    cols.push_back("mean_p_" + std::to_string(k + 1));
  return cols;
}

void append_aggregate_row(result_table& table, const std::string& param,
                          const sweep_cell& cell, const std::string& scheme_label,
                          const aggregate& agg, arma::uword max_beams) {
  std::vector<std::string> row;
  row.push_back(param);
  row.push_back(format_cell(cell.sweep_value));
  row.push_back(format_cell(cell.gamma0_db));
  row.push_back(scheme_label);
  row.push_back(std::to_string(agg.n));
  row.push_back(std::to_string(agg.n_feasible));
  row.push_back(format_cell(
      agg.n ? static_cast<double>(agg.n_feasible) / static_cast<double>(agg.n)
            : 0.0));
  if (agg.n_feasible > 0) {
    row.push_back(format_cell(agg.mean_total));
    row.push_back(format_cell(agg.std_total));
  } else {
    row.push_back("");
    row.push_back("");
  }
  for (arma::uword k = 0; k < max_beams; ++k) {
    if (agg.n_feasible > 0 && k < agg.mean_p.n_elem)
      row.push_back(format_cell(agg.mean_p(k)));
    else
      row.push_back("");
  }
  table.rows.push_back(std::move(row));
}

result_table sweep_traces(const experiment_config& config) {
  result_table table;
  table.columns = {"gamma0_db", "scheme", "trial", "feasible", "iter",
                   "total_power_w"};
  for (arma::uword k = 0; k < config.n_beams; ++k)
    table.columns.push_back("p_" + std::to_string(k + 1));

  const attenuation_profile atten = config.attenuation();
  const double sigma2 = config.sigma2_watts();
  solve_options opts = config.solver;
  if (opts.trace_stride == 0)
    opts.trace_stride = 1;

  for (double g0 : config.gamma0_db) {
    const arma::vec gamma(config.n_beams, arma::fill::value(db_to_linear(g0)));
    for (const scheme& s : config.schemes) {
      for (arma::uword t = 0; t < config.n_trials; ++t) {
        const std::uint64_t seed =
            config.base_seed ^ static_cast<std::uint64_t>(t);
        const channel_realization chan = sample_channel(
            seed, config.n_elements, config.n_beams, atten, sigma2);
        const trial_result r = solve_instance(chan, s, gamma, opts, seed);
        for (const trace_point& pt : r.trace) {
          std::vector<std::string> row = {format_cell(g0),
                                          scheme_name(s),
                                          std::to_string(t),
                                          r.feasible ? "1" : "0",
                                          std::to_string(pt.iter),
                                          format_cell(pt.total)};
          for (arma::uword k = 0; k < config.n_beams; ++k)
            row.push_back(format_cell(pt.p(k)));
          table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return table;
}

result_table sweep_balance(const experiment_config& config,
                           const sweep_csi_comparison& sw,
                           arma::uword threads) {
  result_table table;
  table.columns = {"sweep_param",       "sweep_value", "scheme",
                   "n_trials",          "n_feasible",  "feasibility_rate",
                   "mean_gamma_star_db"};
  const attenuation_profile atten = config.attenuation();
  const double sigma2 = config.sigma2_watts();
  solve_options opts = config.solver;
  opts.trace_stride = 0;

  for (double p_tot : sw.p_tot_watts) {
    for (const scheme& s : config.schemes) {
      std::vector<balance_result> results(config.n_trials);
      run_indexed(config.n_trials, threads, [&](arma::uword t) {
        const std::uint64_t seed =
            config.base_seed ^ static_cast<std::uint64_t>(t);
        const channel_realization chan = sample_channel(
            seed, config.n_elements, config.n_beams, atten, sigma2);
        results[t] = max_common_sinr(chan, s, p_tot, sw.tol_db, opts, seed);
      });
      arma::uword n_ok = 0;
      double sum = 0.0;
      for (const balance_result& r : results) {
        if (!r.feasible)
          continue;
        ++n_ok;
        sum += r.gamma_star_db;
      }
      std::vector<std::string> row = {
          "p_tot_watts",
          format_cell(p_tot),
          scheme_name(s),
          std::to_string(config.n_trials),
          std::to_string(n_ok),
          format_cell(static_cast<double>(n_ok) /
                      static_cast<double>(config.n_trials))};
      row.push_back(n_ok ? format_cell(sum / static_cast<double>(n_ok)) : "");
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

result_table sweep_air(const experiment_config& config,
                       const sweep_air_interface& sw, arma::uword threads) {
  std::vector<double> efficiencies = sw.efficiencies_bps_hz;
  if (efficiencies.empty())
    for (const rate_table_row& r : sw.table.rows)
      efficiencies.push_back(r.efficiency_bps_hz);

  result_table table;
  table.columns = base_columns(config.n_beams);
  table.columns.insert(table.columns.begin() + 3, "mapping");

  const attenuation_profile atten = config.attenuation();
  for (double eff : efficiencies) {
    for (const char* mapping_name : {"gaussian", "table"}) {
      const rate_mapping mapping =
          std::string(mapping_name) == "gaussian"
              ? rate_mapping(gaussian_mapping{})
              : rate_mapping(sw.table);
      const double gamma_lin = required_sinr(eff, mapping);
      sweep_cell cell;
      cell.sweep_value = eff;
      cell.n_elements = config.n_elements;
      cell.n_beams = config.n_beams;
      cell.atten = atten;
      cell.gamma0_db = linear_to_db(gamma_lin);
      cell.mapping = mapping_name;
      for (const scheme& s : config.schemes) {
        const auto trials = run_cell(config, cell, s, threads);
        const aggregate agg = reduce(trials, cell.n_beams);
        append_aggregate_row(table, "efficiency_bps_hz", cell, scheme_name(s),
                             agg, config.n_beams);
        auto& row = table.rows.back();
        row.insert(row.begin() + 3, cell.mapping);
      }
    }
  }
  return table;
}

result_table sweep_capacity(const experiment_config& config,
                            const sweep_max_users& sw) {
  const std::vector<capacity_result> results = max_users(config, sw.p_tot_watts);
  result_table table;
  table.columns = {"scheme",           "n_beams",
                   "n_trials",         "n_feasible",
                   "feasibility_rate", "mean_total_power_w",
                   "supported",        "scheme_max_users"};
  for (const capacity_result& res : results) {
    for (const capacity_point& pt : res.curve) {
      table.rows.push_back({res.scheme, std::to_string(pt.n_beams),
                            std::to_string(config.n_trials),
                            std::to_string(pt.n_feasible),
                            format_cell(pt.feasibility_rate),
                            pt.n_feasible ? format_cell(pt.mean_total_w) : "",
                            pt.supported ? "1" : "0",
                            std::to_string(res.max_users)});
    }
  }
  return table;
}

} // namespace

result_table monte_carlo_sweep(const experiment_config& config) {
  config.validate();
  const arma::uword threads = resolve_threads(config.threads);

  result_table table;
  if (std::holds_alternative<sweep_iter_trace>(config.sweep)) {
    table = sweep_traces(config);
  } else if (const auto* sw = std::get_if<sweep_csi_comparison>(&config.sweep)) {
    table = sweep_balance(config, *sw, threads);
  } else if (const auto* sw = std::get_if<sweep_air_interface>(&config.sweep)) {
    table = sweep_air(config, *sw, threads);
  } else if (const auto* sw = std::get_if<sweep_max_users>(&config.sweep)) {
    table = sweep_capacity(config, *sw);
  } else {
    // Plain one-axis sweeps share the aggregate-row path.
    std::vector<sweep_cell> cells;
    const std::string param = sweep_param_name(config.sweep);
    const attenuation_profile base_atten = config.attenuation();

    auto make_cell = [&](double value) {
      sweep_cell cell;
      cell.sweep_value = value;
      cell.n_elements = config.n_elements;
      cell.n_beams = config.n_beams;
      cell.atten = base_atten;
      return cell;
    };

    if (const auto* sw = std::get_if<sweep_antenna_elements>(&config.sweep)) {
      for (arma::uword m : sw->values) {
        sweep_cell cell = make_cell(static_cast<double>(m));
        cell.n_elements = m;
        cells.push_back(cell);
      }
    } else if (const auto* sw = std::get_if<sweep_beams>(&config.sweep)) {
      for (arma::uword k : sw->values) {
        sweep_cell cell = make_cell(static_cast<double>(k));
        cell.n_beams = k;
        cell.atten.alpha = arma::vec(k, arma::fill::value(config.alpha));
        cells.push_back(cell);
      }
    } else if (const auto* sw = std::get_if<sweep_eaves_atten>(&config.sweep)) {
      for (double deg : sw->degradation_db) {
        sweep_cell cell = make_cell(deg);
        cell.atten.alpha_e = config.alpha_e * std::pow(10.0, -deg / 20.0);
        cells.push_back(cell);
      }
    } else if (const auto* sw = std::get_if<sweep_secrecy_target>(&config.sweep)) {
      for (double g0 : sw->gamma0_db) {
        sweep_cell cell = make_cell(g0);
        cell.gamma0_db = g0;
        cells.push_back(cell);
      }
    } else if (const auto* sw = std::get_if<sweep_user_atten>(&config.sweep)) {
      for (double a : sw->alpha_values) {
        sweep_cell cell = make_cell(a);
        cell.atten.alpha(sw->user) = a;
        cells.push_back(cell);
      }
    }

    arma::uword max_beams = config.n_beams;
    for (const sweep_cell& cell : cells)
      max_beams = std::max(max_beams, cell.n_beams);
    table.columns = base_columns(max_beams);

    const bool target_swept =
        std::holds_alternative<sweep_secrecy_target>(config.sweep);
    for (const sweep_cell& base_cell : cells) {
      const std::vector<double> targets =
          target_swept ? std::vector<double>{base_cell.gamma0_db}
                       : config.gamma0_db;
      for (double g0 : targets) {
        sweep_cell cell = base_cell;
        cell.gamma0_db = g0;
        for (const scheme& s : config.schemes) {
          const auto trials = run_cell(config, cell, s, threads);
          append_aggregate_row(table, param, cell, scheme_name(s),
                               reduce(trials, cell.n_beams), max_beams);
        }
      }
    }
  }

  table.metadata_json = config_to_json(config).dump(2);
  return table;
}

balance_result max_common_sinr(const channel_realization& chan, const scheme& s,
                               double p_tot_watts, double tol_db,
                               const solve_options& opts,
                               std::uint64_t chan_seed) {
  if (!(p_tot_watts > 0.0))
    throw std::invalid_argument("power budget must be positive (watts)");
  if (!(tol_db > 0.0))
    throw std::invalid_argument("bisection tolerance must be positive (dB)");

  solve_options run_opts = opts;
  run_opts.trace_stride = 0;

  const auto feasible_at = [&](double gamma_db) {
    const arma::vec gamma(chan.n_beams(),
                          arma::fill::value(db_to_linear(gamma_db)));
    const trial_result r = solve_instance(chan, s, gamma, run_opts, chan_seed);
    return r.feasible && r.total <= p_tot_watts;
  };

  double lo = -20.0, hi = 60.0; // dB bracket
  if (!feasible_at(lo))
    return {0.0, false};
  if (feasible_at(hi))
    return {hi, true};
  while (hi - lo > tol_db) {
    const double mid = 0.5 * (lo + hi);
    (feasible_at(mid) ? lo : hi) = mid;
  }
  return {lo, true};
}

std::vector<capacity_result> max_users(const experiment_config& config,
                                       double p_tot_watts) {
  config.validate();
  if (!(p_tot_watts > 0.0))
    throw std::invalid_argument("power budget must be positive (watts)");
  const arma::uword threads = resolve_threads(config.threads);
  const double sigma2 = config.sigma2_watts();
  const double gamma0 = db_to_linear(config.gamma0_db.front());

  std::vector<capacity_result> out;
  for (const scheme& s : config.schemes) {
    // Nulling schemes need K < M; zero-forcing needs K <= M; unconstrained
    // fixed beams get headroom above M.
    arma::uword cap = 2 * config.n_elements;
    if (std::holds_alternative<scheme_joint_zf_nulling>(s) ||
        std::holds_alternative<scheme_joint_imperfect_csi>(s))
      cap = config.n_elements - 1;
    else if (std::holds_alternative<scheme_zfbf_unknown_csi>(s))
      cap = config.n_elements;
    else if (const auto* fb = std::get_if<scheme_fixed_bf>(&s)) {
      if (fb->weights == fixed_weights_kind::zfbf && !fb->W_fixed)
        cap = config.n_elements;
    } else if (const auto* fp = std::get_if<scheme_fixed_power_fixed_bf>(&s)) {
      if (fp->weights == fixed_weights_kind::zfbf && !fp->W_fixed)
        cap = config.n_elements;
    }

    capacity_result res;
    res.scheme = scheme_name(s);
    arma::uword fail_streak = 0;
    for (arma::uword k = 1; k <= cap; ++k) {
      attenuation_profile atten;
      atten.alpha = arma::vec(k, arma::fill::value(config.alpha));
      atten.alpha_e = config.alpha_e;
      const arma::vec gamma(k, arma::fill::value(gamma0));
      solve_options opts = config.solver;
      opts.trace_stride = 0;

      std::vector<trial_result> trials(config.n_trials);
      run_indexed(config.n_trials, threads, [&](arma::uword t) {
        const std::uint64_t seed =
            config.base_seed ^ static_cast<std::uint64_t>(t);
        const channel_realization chan =
            sample_channel(seed, config.n_elements, k, atten, sigma2);
        trials[t] = solve_instance(chan, s, gamma, opts, seed);
      });

      const aggregate agg = reduce(trials, k);
      capacity_point pt;
      pt.n_beams = k;
      pt.n_feasible = agg.n_feasible;
      pt.feasibility_rate =
          static_cast<double>(agg.n_feasible) / static_cast<double>(agg.n);
      pt.mean_total_w = agg.mean_total;
      pt.supported = pt.feasibility_rate >= 0.5 && agg.n_feasible > 0 &&
                     agg.mean_total <= p_tot_watts;
      res.curve.push_back(pt);

      if (pt.supported) {
        res.max_users = k;
        fail_streak = 0;
      } else if (++fail_streak >= 3) {
        break; // supported K are contiguous in practice; stop scanning
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

} // namespace satsec
