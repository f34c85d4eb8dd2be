#include "qmc/compressed/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qmc::co {

std::uint32_t AdversaryCircuit::query_count() const {
  std::uint32_t q = 0;
  for (const auto& s : steps) q += s.type == Step::Type::query;
  return q;
}

double unitarity_defect(const std::vector<std::vector<cplx>>& u) {
  const std::size_t d = u.size();
  double worst = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      cplx dot(0, 0);
      for (std::size_t l = 0; l < d; ++l) dot += u[i][l] * std::conj(u[j][l]);
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dot - cplx(target, 0)));
    }
  }
  return worst;
}

std::vector<std::vector<cplx>> random_unitary(std::uint32_t dim, Rng& rng) {
  auto gauss = [&rng]() {
    const double a = rng.real();
    const double b = rng.real();
    const double r = std::sqrt(-2.0 * std::log(1.0 - a));
    return cplx(r * std::cos(2 * M_PI * b), r * std::sin(2 * M_PI * b));
  };
  std::vector<std::vector<cplx>> u(dim, std::vector<cplx>(dim));
  for (auto& row : u)
    for (auto& e : row) e = gauss();
  // Gram-Schmidt over rows.
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = 0; j < i; ++j) {
      cplx dot(0, 0);
      for (std::uint32_t l = 0; l < dim; ++l) dot += u[i][l] * std::conj(u[j][l]);
      for (std::uint32_t l = 0; l < dim; ++l) u[i][l] -= dot * u[j][l];
    }
    double nrm = 0;
    for (std::uint32_t l = 0; l < dim; ++l) nrm += std::norm(u[i][l]);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw std::runtime_error("random_unitary: degenerate draw");
    for (std::uint32_t l = 0; l < dim; ++l) u[i][l] /= nrm;
  }
  return u;
}

AdversaryCircuit random_circuit(std::uint32_t m, std::uint32_t n, std::uint32_t z,
                                std::uint32_t q, Rng& rng) {
  AdversaryCircuit c;
  c.m = m;
  c.n = n;
  c.z = z;
  for (std::uint32_t i = 0; i < q; ++i) {
    Step u;
    u.type = Step::Type::unitary;
    u.matrix = random_unitary(c.adversary_dim(), rng);
    c.steps.push_back(std::move(u));
    c.steps.push_back(Step{});  // query
  }
  Step u;
  u.type = Step::Type::unitary;
  u.matrix = random_unitary(c.adversary_dim(), rng);
  c.steps.push_back(std::move(u));
  return c;
}

AdversaryCircuit classical_probe_circuit(std::uint32_t m, std::uint32_t n, std::uint32_t q) {
  if (q > m) throw std::invalid_argument("classical_probe_circuit: q must be <= m");
  AdversaryCircuit c;
  c.m = m;
  c.n = n;
  c.z = 1;
  for (std::uint32_t i = 0; i < q; ++i) {
    if (i > 0) {
      Step s;
      s.type = Step::Type::add_const;
      s.target = 'x';
      s.value = 1;
      c.steps.push_back(s);
    }
    c.steps.push_back(Step{});  // query
  }
  return c;
}

std::string circuit_to_json(const AdversaryCircuit& c) {
  nlohmann::json j;
  j["m"] = c.m;
  j["n"] = c.n;
  j["z"] = c.z;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : c.steps) {
    nlohmann::json js;
    switch (s.type) {
      case Step::Type::query:
        js["type"] = "query";
        break;
      case Step::Type::unitary: {
        js["type"] = "unitary";
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : s.matrix) {
          nlohmann::json r = nlohmann::json::array();
          for (const auto& e : row) r.push_back({e.real(), e.imag()});
          rows.push_back(std::move(r));
        }
        js["matrix"] = std::move(rows);
        break;
      }
      case Step::Type::add_const:
        js["type"] = "add_const";
        js["target"] = std::string(1, s.target);
        js["value"] = s.value;
        break;
    }
    j["steps"].push_back(std::move(js));
  }
  return j.dump();
}

AdversaryCircuit circuit_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  AdversaryCircuit c;
  c.m = j.at("m").get<std::uint32_t>();
  c.n = j.at("n").get<std::uint32_t>();
  c.z = j.at("z").get<std::uint32_t>();
  for (const auto& js : j.at("steps")) {
    Step s;
    const std::string type = js.at("type").get<std::string>();
    if (type == "query") {
      s.type = Step::Type::query;
    } else if (type == "unitary") {
      s.type = Step::Type::unitary;
      for (const auto& row : js.at("matrix")) {
        std::vector<cplx> r;
        for (const auto& e : row) r.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        s.matrix.push_back(std::move(r));
      }
      if (s.matrix.size() != c.adversary_dim())
        throw std::invalid_argument("circuit_from_json: matrix dimension mismatch");
      if (unitarity_defect(s.matrix) > 1e-10)
        throw std::invalid_argument("circuit_from_json: matrix is not unitary");
    } else if (type == "add_const") {
      s.type = Step::Type::add_const;
      s.target = js.at("target").get<std::string>().at(0);
      s.value = js.at("value").get<std::uint32_t>();
    } else {
      throw std::invalid_argument("circuit_from_json: unknown step type " + type);
    }
    c.steps.push_back(std::move(s));
  }
  return c;
}

}  // namespace qmc::co
