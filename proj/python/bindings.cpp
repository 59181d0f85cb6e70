// Copyright 2026 The renyi-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <vector>

#include "renyi/channels.hpp"
#include "renyi/divergence.hpp"
#include "renyi/harness.hpp"
#include "renyi/io.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"

namespace py = pybind11;
using namespace renyi;

namespace {

PsdOperator psd(const Matrix& m) { return PsdOperator(HermitianMatrix(m)); }

/// Accepts a float or one of the strings understood by RenyiOrder::parse.
RenyiOrder order_of(const py::object& alpha) {
  if (py::isinstance<py::str>(alpha)) return RenyiOrder::parse(alpha.cast<std::string>());
  const double a = alpha.cast<double>();
  if (std::isinf(a) && a > 0) return RenyiOrder::infinity();
  if (a == 1.0) return RenyiOrder::one();
  return RenyiOrder::finite(a);
}

QuantumChannel channel_of(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("channel: at least one Kraus operator required");
  return QuantumChannel(static_cast<std::size_t>(kraus.front().cols()),
                        static_cast<std::size_t>(kraus.front().rows()), kraus);
}

py::object extended(const ExtendedReal& x) { return py::float_(x.to_double()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sandwiched Renyi divergences, channels and verification campaigns.";

  m.def(
      "divergence",
      [](const Matrix& rho, const Matrix& sigma, const py::object& alpha, const std::string& base,
         bool traditional) {
        const DivergencePair pair(psd(rho), psd(sigma));
        const RenyiOrder order = order_of(alpha);
        if (traditional && order.kind() == RenyiOrder::Kind::Infinity)
          throw std::invalid_argument("traditional divergence is defined for finite orders");
        ExtendedReal d = traditional && order.kind() == RenyiOrder::Kind::Finite
                             ? d_prime_alpha(pair, order.alpha())
                             : d_alpha(pair, order);
        if (base == "2") d = to_base2(d);
        else if (base != "e") throw std::invalid_argument("base must be 'e' or '2'");
        return d.to_double();
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"), py::arg("base") = "e",
      py::arg("traditional") = false,
      "D_alpha(rho||sigma); +inf as math.inf. alpha may be a float, '1' or 'inf'.");

  m.def(
      "q_alpha",
      [](const Matrix& rho, const Matrix& sigma, double alpha) {
        return q_alpha(DivergencePair(psd(rho), psd(sigma)), alpha).to_double();
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"));

  m.def(
      "fidelity",
      [](const Matrix& rho, const Matrix& sigma) {
        return fidelity(DivergencePair(psd(rho), psd(sigma)));
      },
      py::arg("rho"), py::arg("sigma"));

  m.def(
      "random_density",
      [](std::size_t dim, std::uint64_t seed, std::size_t rank) {
        CounterRng rng(seed, 0);
        return random_density(dim, rng, rank).matrix();
      },
      py::arg("dim"), py::arg("seed"), py::arg("rank") = 0);

  m.def(
      "haar_unitary", [](std::size_t n, std::uint64_t seed) { return haar_unitary(n, seed); },
      py::arg("n"), py::arg("seed"));

  m.def(
      "random_channel",
      [](std::size_t din, std::size_t dout, std::size_t kraus, std::uint64_t seed) {
        return random_channel(din, dout, kraus, seed).kraus();
      },
      py::arg("din"), py::arg("dout"), py::arg("kraus"), py::arg("seed"),
      "Kraus operators of a random CPTP map.");

  m.def(
      "apply_channel",
      [](const std::vector<Matrix>& kraus, const Matrix& state) {
        return renyi::apply(channel_of(kraus), state);
      },
      py::arg("kraus"), py::arg("state"));

  m.def(
      "stinespring",
      [](const std::vector<Matrix>& kraus) {
        const StinespringDilation d = stinespring(channel_of(kraus));
        py::dict out;
        out["unitary"] = d.unitary;
        out["env_state"] = d.env_state.matrix();
        out["env_dim"] = d.env_dim;
        return out;
      },
      py::arg("kraus"));

  m.def("claim_names", &harness::claim_names);

  m.def(
      "_verify_json",
      [](const std::string& claim, const std::vector<std::size_t>& dims, int trials,
         std::uint64_t seed, double tol, int threads, const std::vector<std::string>& alphas) {
        harness::CampaignConfig cfg;
        cfg.dims = dims;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.tolerance = tol;
        cfg.threads = threads;
        for (const std::string& a : alphas) cfg.alphas.push_back(RenyiOrder::parse(a));
        py::gil_scoped_release release;
        return harness::run_claim(claim, cfg).to_json().dump();
      },
      py::arg("claim"), py::arg("dims"), py::arg("trials"), py::arg("seed"), py::arg("tol"),
      py::arg("threads"), py::arg("alphas"));

  m.def(
      "alpha_scan",
      [](const Matrix& rho, const Matrix& sigma, int points, double lo, double hi) {
        const harness::AlphaScan scan = harness::run_alpha_scan(
            DivergencePair(psd(rho), psd(sigma)), harness::default_scan_grid(lo, hi, points));
        py::list rows;
        for (const harness::ScanRow& r : scan.rows)
          rows.append(py::make_tuple(r.alpha, extended(r.d_alpha),
                                     r.d_prime ? extended(*r.d_prime) : py::none()));
        return rows;
      },
      py::arg("rho"), py::arg("sigma"), py::arg("points") = 25, py::arg("lo") = 0.05,
      py::arg("hi") = 100.0, "Rows (alpha, D_alpha, D'_alpha or None).");

  py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<DilationError>(m, "DilationError", PyExc_ValueError);
}
