#include "qmc/compressed/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmc::co {

namespace {

constexpr double kPruneThreshold = 1e-14;  // on |amplitude|^2

std::vector<cplx> omega_table(std::uint32_t n) {
  std::vector<cplx> w(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    w[i] = cplx(std::cos(a), std::sin(a));
  }
  return w;
}

struct KeyView {
  std::uint8_t x, u, z, db_size;
  const std::uint8_t* db;  // pairs (point, value)
};

KeyView decode(const std::string& key) {
  const auto* b = reinterpret_cast<const std::uint8_t*>(key.data());
  return KeyView{b[0], b[1], b[2], b[3], b + 4};
}

}  // namespace

std::string encode_key(std::uint32_t x, std::uint32_t u, std::uint32_t z,
                       const std::vector<std::pair<std::uint8_t, std::uint8_t>>& db) {
  std::string key;
  key.resize(4 + 2 * db.size());
  key[0] = static_cast<char>(x);
  key[1] = static_cast<char>(u);
  key[2] = static_cast<char>(z);
  key[3] = static_cast<char>(db.size());
  for (std::size_t i = 0; i < db.size(); ++i) {
    key[4 + 2 * i] = static_cast<char>(db[i].first);
    key[5 + 2 * i] = static_cast<char>(db[i].second);
  }
  return key;
}

std::uint32_t database_size(const std::string& key) { return decode(key).db_size; }

std::uint32_t collision_count(const std::string& key, std::uint32_t s) {
  const auto v = decode(key);
  // Databases are tiny; count preimages per value quadratically.
  std::uint32_t count = 0;
  for (std::uint32_t i = 0; i < v.db_size; ++i) {
    const std::uint8_t val = v.db[2 * i + 1];
    bool first = true;
    std::uint32_t preimages = 0;
    for (std::uint32_t j = 0; j < v.db_size; ++j) {
      if (v.db[2 * j + 1] != val) continue;
      if (j < i) {
        first = false;  // value already counted at its first occurrence
        break;
      }
      ++preimages;
    }
    if (first && preimages >= s) ++count;
  }
  return count;
}

double JointState::norm_sq() const {
  double s = 0;
  for (const auto& [k, a] : amps) s += std::norm(a);
  return s;
}

// ---------------------------------------------------------------------------
// Brute force over full truth tables.
// ---------------------------------------------------------------------------

BruteforceResult bruteforce_run(const AdversaryCircuit& circuit, OracleMode mode,
                                std::uint64_t amplitude_guard) {
  const std::uint64_t m = circuit.m, n = circuit.n, zdim = circuit.z;
  std::uint64_t tables = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    tables *= n;
    if (tables > amplitude_guard) throw std::invalid_argument("bruteforce_run: size guard");
  }
  const std::uint64_t adim = m * n * zdim;
  const std::uint64_t total = adim * tables;
  if (total > amplitude_guard) throw std::invalid_argument("bruteforce_run: size guard");

  const auto w = omega_table(static_cast<std::uint32_t>(n));
  std::vector<cplx> state(total, cplx(0, 0));
  const double init = 1.0 / std::sqrt(static_cast<double>(tables));
  for (std::uint64_t h = 0; h < tables; ++h) state[h] = cplx(init, 0);  // adversary |0,0,0>

  // Truth table digit: H(x) = (h / n^x) mod n.
  std::vector<std::uint64_t> stride(m);
  stride[0] = 1;
  for (std::uint64_t i = 1; i < m; ++i) stride[i] = stride[i - 1] * n;

  std::vector<cplx> scratch(total);
  for (const auto& step : circuit.steps) {
    switch (step.type) {
      case Step::Type::query: {
        if (mode == OracleMode::standard) {
          std::fill(scratch.begin(), scratch.end(), cplx(0, 0));
          for (std::uint64_t a = 0; a < adim; ++a) {
            const std::uint64_t x = a / (n * zdim);
            const std::uint64_t u = (a / zdim) % n;
            const std::uint64_t zz = a % zdim;
            for (std::uint64_t h = 0; h < tables; ++h) {
              const std::uint64_t hx = (h / stride[x]) % n;
              const std::uint64_t a2 = (x * n + (u + hx) % n) * zdim + zz;
              scratch[a2 * tables + h] = state[a * tables + h];
            }
          }
          state.swap(scratch);
        } else {
          for (std::uint64_t a = 0; a < adim; ++a) {
            const std::uint64_t x = a / (n * zdim);
            const std::uint64_t u = (a / zdim) % n;
            for (std::uint64_t h = 0; h < tables; ++h) {
              const std::uint64_t hx = (h / stride[x]) % n;
              state[a * tables + h] *= w[(u * hx) % n];
            }
          }
        }
        break;
      }
      case Step::Type::unitary: {
        std::fill(scratch.begin(), scratch.end(), cplx(0, 0));
        for (std::uint64_t h = 0; h < tables; ++h)
          for (std::uint64_t a2 = 0; a2 < adim; ++a2) {
            cplx acc(0, 0);
            for (std::uint64_t a = 0; a < adim; ++a)
              acc += step.matrix[a2][a] * state[a * tables + h];
            scratch[a2 * tables + h] = acc;
          }
        state.swap(scratch);
        break;
      }
      case Step::Type::add_const: {
        std::fill(scratch.begin(), scratch.end(), cplx(0, 0));
        for (std::uint64_t a = 0; a < adim; ++a) {
          std::uint64_t x = a / (n * zdim);
          std::uint64_t u = (a / zdim) % n;
          std::uint64_t zz = a % zdim;
          if (step.target == 'x') x = (x + step.value) % m;
          else if (step.target == 'u') u = (u + step.value) % n;
          else zz = (zz + step.value) % zdim;
          const std::uint64_t a2 = (x * n + u) * zdim + zz;
          for (std::uint64_t h = 0; h < tables; ++h)
            scratch[a2 * tables + h] = state[a * tables + h];
        }
        state.swap(scratch);
        break;
      }
    }
  }

  BruteforceResult r;
  r.m = static_cast<std::uint32_t>(m);
  r.n = static_cast<std::uint32_t>(n);
  r.z = static_cast<std::uint32_t>(zdim);
  r.outcome.assign(adim, 0);
  for (std::uint64_t a = 0; a < adim; ++a) {
    double p = 0;
    for (std::uint64_t h = 0; h < tables; ++h) p += std::norm(state[a * tables + h]);
    r.outcome[a] = p;
  }
  r.state = std::move(state);
  return r;
}

double BruteforceResult::claim_probability(const ClaimFn& claims) const {
  const std::uint64_t tables = state.size() / (static_cast<std::uint64_t>(m) * n * z);
  std::vector<std::uint64_t> stride(m);
  stride[0] = 1;
  for (std::uint32_t i = 1; i < m; ++i) stride[i] = stride[i - 1] * n;
  double p = 0;
  const std::uint64_t adim = static_cast<std::uint64_t>(m) * n * z;
  for (std::uint64_t a = 0; a < adim; ++a) {
    const auto x = static_cast<std::uint32_t>(a / (n * z));
    const auto u = static_cast<std::uint32_t>((a / z) % n);
    const auto zz = static_cast<std::uint32_t>(a % z);
    const auto pairs = claims(x, u, zz);
    for (std::uint64_t h = 0; h < tables; ++h) {
      bool ok = true;
      for (const auto& c : pairs)
        if ((h / stride[c.x]) % n != c.y) {
          ok = false;
          break;
        }
      if (ok) p += std::norm(state[a * tables + h]);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Compressed phase-oracle simulation.
// ---------------------------------------------------------------------------

namespace {

using AmpMap = std::unordered_map<std::string, cplx>;

void prune(AmpMap& amps, double& pruned_mass) {
  for (auto it = amps.begin(); it != amps.end();) {
    if (std::norm(it->second) < kPruneThreshold) {
      pruned_mass += std::norm(it->second);
      it = amps.erase(it);
    } else {
      ++it;
    }
  }
}

// QFT on the response register: |u> -> (1/sqrt(N)) sum_u' omega^{sign*u*u'} |u'>.
AmpMap qft_response(const AmpMap& amps, std::uint32_t n, int sign,
                    const std::vector<cplx>& w) {
  std::unordered_map<std::string, std::vector<cplx>> groups;
  for (const auto& [key, a] : amps) {
    std::string gk = key;
    const auto u = static_cast<std::uint8_t>(gk[1]);
    gk[1] = 0;
    auto& vec = groups[gk];
    if (vec.empty()) vec.assign(n, cplx(0, 0));
    vec[u] += a;
  }
  AmpMap out;
  out.reserve(amps.size() * 2);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& [gk, vec] : groups) {
    std::string key = gk;
    for (std::uint32_t u2 = 0; u2 < n; ++u2) {
      cplx acc(0, 0);
      for (std::uint32_t u = 0; u < n; ++u) {
        const std::uint32_t e = (u * u2) % n;
        acc += vec[u] * (sign > 0 ? w[e] : std::conj(w[e]));
      }
      if (std::norm(acc) < 1e-30) continue;
      key[1] = static_cast<char>(u2);
      out[key] = acc * inv;
    }
  }
  return out;
}

// The compressed phase-oracle query: the Fourier-side update D (+)= (x, u)
// conjugated by the per-entry QFT at the queried point.
AmpMap phase_query(const AmpMap& amps, std::uint32_t n, const std::vector<cplx>& w) {
  // Group key: full key with the queried point's entry removed; remember the
  // removed phase value (or absence) per contribution.
  struct Group {
    std::vector<cplx> fourier;  // amplitude per Fourier digit d
  };
  std::unordered_map<std::string, Group> groups;
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));

  for (const auto& [key, a] : amps) {
    const auto v = decode(key);
    // Locate entry at v.x.
    int pos = -1;
    for (std::uint32_t i = 0; i < v.db_size; ++i)
      if (v.db[2 * i] == v.x) {
        pos = static_cast<int>(i);
        break;
      }
    std::string gk;
    int p_val = -1;  // phase value at the queried point, -1 if absent
    if (pos < 0) {
      gk = key;
    } else {
      p_val = v.db[2 * pos + 1];
      gk.reserve(key.size() - 2);
      gk.append(key, 0, 4 + 2 * static_cast<std::size_t>(pos));
      gk.append(key, 4 + 2 * static_cast<std::size_t>(pos) + 2, std::string::npos);
      gk[3] = static_cast<char>(v.db_size - 1);
    }
    auto& g = groups[gk];
    if (g.fourier.empty()) g.fourier.assign(n, cplx(0, 0));
    if (p_val < 0) {
      g.fourier[0] += a;
    } else {
      // phase -> fourier: |p> -> (1/sqrt(N)) sum_d omega^{-dp} |d>
      for (std::uint32_t d = 0; d < n; ++d)
        g.fourier[d] += a * std::conj(w[(d * static_cast<std::uint32_t>(p_val)) % n]) * inv;
    }
  }

  AmpMap out;
  out.reserve(amps.size() * 2);
  for (auto& [gk, g] : groups) {
    const auto v = decode(gk);
    const std::uint32_t u = v.u;
    // Shift the Fourier digit by the response value.
    std::vector<cplx> shifted(n);
    for (std::uint32_t d = 0; d < n; ++d) shifted[(d + u) % n] = g.fourier[d];

    // Absent branch: digit 0.
    if (std::norm(shifted[0]) >= 1e-30) out[gk] += shifted[0];

    // Present branches: fourier -> phase, |d> -> (1/sqrt(N)) sum_p omega^{dp} |p>.
    // Rebuild keys with the entry (x, p) inserted in sorted position.
    std::vector<std::pair<std::uint8_t, std::uint8_t>> db;
    db.reserve(v.db_size + 1);
    for (std::uint32_t i = 0; i < v.db_size; ++i) db.emplace_back(v.db[2 * i], v.db[2 * i + 1]);
    for (std::uint32_t p = 0; p < n; ++p) {
      cplx acc(0, 0);
      for (std::uint32_t d = 1; d < n; ++d) acc += shifted[d] * w[(d * p) % n];
      acc *= inv;
      if (std::norm(acc) < 1e-30) continue;
      auto db2 = db;
      auto it = std::lower_bound(db2.begin(), db2.end(),
                                 std::make_pair(static_cast<std::uint8_t>(v.x),
                                                static_cast<std::uint8_t>(0)));
      db2.insert(it, {static_cast<std::uint8_t>(v.x), static_cast<std::uint8_t>(p)});
      out[encode_key(v.x, u, v.z, db2)] += acc;
    }
  }
  return out;
}

StepRecord record_masses(const JointState& s, std::uint32_t max_j, std::uint32_t max_k) {
  StepRecord r;
  std::vector<double> f_ge(max_j + 1, 0), g_ge(max_k + 1, 0);
  std::vector<std::vector<double>> ge(max_j + 1, std::vector<double>(max_k + 1, 0));
  for (const auto& [key, a] : s.amps) {
    const double p = std::norm(a);
    const std::uint32_t c2 = std::min(collision_count(key, 2), max_j);
    const std::uint32_t c3 = std::min(collision_count(key, 3), max_k);
    for (std::uint32_t j = 1; j <= c2; ++j) f_ge[j] += p;
    for (std::uint32_t k = 1; k <= c3; ++k) g_ge[k] += p;
    for (std::uint32_t k = 1; k <= c3; ++k) ge[c2][k] += p;
  }
  r.f.resize(max_j);
  for (std::uint32_t j = 1; j <= max_j; ++j) r.f[j - 1] = std::sqrt(f_ge[j]);
  r.g.resize(max_k);
  for (std::uint32_t k = 1; k <= max_k; ++k) r.g[k - 1] = std::sqrt(g_ge[k]);
  r.g_exact.assign(max_j + 1, std::vector<double>(max_k, 0));
  for (std::uint32_t j = 0; j <= max_j; ++j)
    for (std::uint32_t k = 1; k <= max_k; ++k) r.g_exact[j][k - 1] = std::sqrt(ge[j][k]);
  r.norm_sq = s.norm_sq();
  r.pruned_mass = s.pruned_mass;
  return r;
}

}  // namespace

CompressedResult compressed_run(const AdversaryCircuit& circuit, OracleMode mode,
                                std::uint64_t amplitude_guard) {
  const std::uint32_t m = circuit.m, n = circuit.n, zdim = circuit.z;
  if (m > 255 || n > 255 || zdim > 255)
    throw std::invalid_argument("compressed_run: register sizes must fit a byte");
  const auto w = omega_table(n);

  CompressedResult result;
  auto& s = result.final_state;
  s.m = m;
  s.n = n;
  s.z = zdim;
  s.rep = JointState::Rep::phase;
  s.amps[encode_key(0, 0, 0, {})] = cplx(1, 0);

  constexpr std::uint32_t kMaxJ = 3, kMaxK = 2;
  result.trace.n = n;
  result.trace.max_j = kMaxJ;
  result.trace.max_k = kMaxK;
  result.trace.steps.push_back(record_masses(s, kMaxJ, kMaxK));

  std::uint32_t queries_done = 0;
  for (const auto& step : circuit.steps) {
    switch (step.type) {
      case Step::Type::query: {
        if (mode == OracleMode::standard) s.amps = qft_response(s.amps, n, +1, w);
        s.amps = phase_query(s.amps, n, w);
        if (mode == OracleMode::standard) s.amps = qft_response(s.amps, n, -1, w);
        ++queries_done;
        break;
      }
      case Step::Type::unitary: {
        const std::uint32_t adim = circuit.adversary_dim();
        std::unordered_map<std::string, std::vector<cplx>> groups;
        for (const auto& [key, a] : s.amps) {
          const auto v = decode(key);
          std::string gk = key;
          gk[0] = gk[1] = gk[2] = 0;
          auto& vec = groups[gk];
          if (vec.empty()) vec.assign(adim, cplx(0, 0));
          vec[(static_cast<std::uint32_t>(v.x) * n + v.u) * zdim + v.z] += a;
        }
        AmpMap out;
        out.reserve(s.amps.size());
        for (auto& [gk, vec] : groups) {
          std::string key = gk;
          for (std::uint32_t a2 = 0; a2 < adim; ++a2) {
            cplx acc(0, 0);
            for (std::uint32_t a = 0; a < adim; ++a) acc += step.matrix[a2][a] * vec[a];
            if (std::norm(acc) < 1e-30) continue;
            key[0] = static_cast<char>(a2 / (n * zdim));
            key[1] = static_cast<char>((a2 / zdim) % n);
            key[2] = static_cast<char>(a2 % zdim);
            out[key] = acc;
          }
        }
        s.amps = std::move(out);
        break;
      }
      case Step::Type::add_const: {
        AmpMap out;
        out.reserve(s.amps.size());
        for (const auto& [key, a] : s.amps) {
          std::string k2 = key;
          if (step.target == 'x')
            k2[0] = static_cast<char>((static_cast<std::uint8_t>(key[0]) + step.value) % m);
          else if (step.target == 'u')
            k2[1] = static_cast<char>((static_cast<std::uint8_t>(key[1]) + step.value) % n);
          else
            k2[2] = static_cast<char>((static_cast<std::uint8_t>(key[2]) + step.value) % zdim);
          out[std::move(k2)] = a;
        }
        s.amps = std::move(out);
        break;
      }
    }
    prune(s.amps, s.pruned_mass);
    if (s.amps.size() > amplitude_guard)
      throw std::invalid_argument("compressed_run: size guard");
    const double drift = std::abs(s.norm_sq() + s.pruned_mass - 1.0);
    if (drift > 1e-9) throw std::runtime_error("compressed_run: norm drift");

    auto rec = record_masses(s, kMaxJ, kMaxK);
    rec.type = step.type;
    rec.query_index = step.type == Step::Type::query ? queries_done : 0;
    result.trace.steps.push_back(std::move(rec));
  }

  result.outcome.assign(static_cast<std::size_t>(m) * n * zdim, 0);
  for (const auto& [key, a] : s.amps) {
    const auto v = decode(key);
    result.outcome[(static_cast<std::size_t>(v.x) * n + v.u) * zdim + v.z] += std::norm(a);
  }
  return result;
}

Database fourier_db_update(const Database& db, std::uint32_t x, std::uint32_t u,
                           std::uint32_t n) {
  Database out = db;
  auto it = std::lower_bound(
      out.begin(), out.end(),
      std::make_pair(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(0)),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != out.end() && it->first == x) {
    const std::uint32_t v = (it->second + u) % n;
    if (v == 0) {
      out.erase(it);
    } else {
      it->second = static_cast<std::uint8_t>(v);
    }
  } else if (u % n != 0) {
    out.insert(it, {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(u % n)});
  }
  return out;
}

CompressedResult compressed_fourier_run(const AdversaryCircuit& circuit, OracleMode mode,
                                        std::uint64_t amplitude_guard) {
  const std::uint32_t m = circuit.m, n = circuit.n, zdim = circuit.z;
  if (m > 255 || n > 255 || zdim > 255)
    throw std::invalid_argument("compressed_fourier_run: register sizes must fit a byte");
  const auto w = omega_table(n);

  CompressedResult result;
  auto& s = result.final_state;
  s.m = m;
  s.n = n;
  s.z = zdim;
  s.rep = JointState::Rep::fourier;
  s.amps[encode_key(0, 0, 0, {})] = cplx(1, 0);

  for (const auto& step : circuit.steps) {
    switch (step.type) {
      case Step::Type::query: {
        if (mode == OracleMode::standard) s.amps = qft_response(s.amps, n, +1, w);
        AmpMap out;
        out.reserve(s.amps.size());
        for (const auto& [key, a] : s.amps) {
          const auto v = decode(key);
          Database db;
          db.reserve(v.db_size);
          for (std::uint32_t i = 0; i < v.db_size; ++i)
            db.emplace_back(v.db[2 * i], v.db[2 * i + 1]);
          out[encode_key(v.x, v.u, v.z, fourier_db_update(db, v.x, v.u, n))] += a;
        }
        s.amps = std::move(out);
        if (mode == OracleMode::standard) s.amps = qft_response(s.amps, n, -1, w);
        break;
      }
      case Step::Type::unitary: {
        const std::uint32_t adim = circuit.adversary_dim();
        std::unordered_map<std::string, std::vector<cplx>> groups;
        for (const auto& [key, a] : s.amps) {
          const auto v = decode(key);
          std::string gk = key;
          gk[0] = gk[1] = gk[2] = 0;
          auto& vec = groups[gk];
          if (vec.empty()) vec.assign(adim, cplx(0, 0));
          vec[(static_cast<std::uint32_t>(v.x) * n + v.u) * zdim + v.z] += a;
        }
        AmpMap out;
        out.reserve(s.amps.size());
        for (auto& [gk, vec] : groups) {
          std::string key = gk;
          for (std::uint32_t a2 = 0; a2 < adim; ++a2) {
            cplx acc(0, 0);
            for (std::uint32_t a = 0; a < adim; ++a) acc += step.matrix[a2][a] * vec[a];
            if (std::norm(acc) < 1e-30) continue;
            key[0] = static_cast<char>(a2 / (n * zdim));
            key[1] = static_cast<char>((a2 / zdim) % n);
            key[2] = static_cast<char>(a2 % zdim);
            out[key] = acc;
          }
        }
        s.amps = std::move(out);
        break;
      }
      case Step::Type::add_const: {
        AmpMap out;
        out.reserve(s.amps.size());
        for (const auto& [key, a] : s.amps) {
          std::string k2 = key;
          if (step.target == 'x')
            k2[0] = static_cast<char>((static_cast<std::uint8_t>(key[0]) + step.value) % m);
          else if (step.target == 'u')
            k2[1] = static_cast<char>((static_cast<std::uint8_t>(key[1]) + step.value) % n);
          else
            k2[2] = static_cast<char>((static_cast<std::uint8_t>(key[2]) + step.value) % zdim);
          out[std::move(k2)] = a;
        }
        s.amps = std::move(out);
        break;
      }
    }
    prune(s.amps, s.pruned_mass);
    if (s.amps.size() > amplitude_guard)
      throw std::invalid_argument("compressed_fourier_run: size guard");
  }

  result.outcome.assign(static_cast<std::size_t>(m) * n * zdim, 0);
  for (const auto& [key, a] : s.amps) {
    const auto v = decode(key);
    result.outcome[(static_cast<std::size_t>(v.x) * n + v.u) * zdim + v.z] += std::norm(a);
  }
  return result;
}

JointState to_phase_representation(const JointState& state) {
  if (state.rep != JointState::Rep::fourier)
    throw std::invalid_argument("to_phase_representation: fourier representation required");
  const auto w = omega_table(state.n);
  const double inv = 1.0 / std::sqrt(static_cast<double>(state.n));
  JointState out;
  out.m = state.m;
  out.n = state.n;
  out.z = state.z;
  out.rep = JointState::Rep::phase;
  out.pruned_mass = state.pruned_mass;
  for (const auto& [key, a] : state.amps) {
    const auto v = decode(key);
    Database db;
    for (std::uint32_t i = 0; i < v.db_size; ++i)
      db.emplace_back(v.db[2 * i], v.db[2 * i + 1]);
    // Expand each entry (x, d) into sum_p omega^{dp} |p> / sqrt(N).
    std::vector<std::pair<Database, cplx>> branches{{Database{}, a}};
    for (const auto& [x, d] : db) {
      std::vector<std::pair<Database, cplx>> next;
      next.reserve(branches.size() * state.n);
      for (const auto& [partial, amp] : branches)
        for (std::uint32_t p = 0; p < state.n; ++p) {
          Database extended = partial;
          extended.emplace_back(x, static_cast<std::uint8_t>(p));
          next.emplace_back(std::move(extended), amp * w[(d * p) % state.n] * inv);
        }
      branches = std::move(next);
    }
    for (const auto& [full, amp] : branches)
      out.amps[encode_key(v.x, v.u, v.z, full)] += amp;
  }
  for (auto it = out.amps.begin(); it != out.amps.end();) {
    if (std::norm(it->second) < 1e-30) {
      it = out.amps.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

double CompressedResult::claim_probability(const ClaimFn& claims) const {
  double p = 0;
  for (const auto& [key, a] : final_state.amps) {
    const auto v = decode(key);
    const auto pairs = claims(v.x, v.u, v.z);
    bool ok = true;
    for (const auto& c : pairs) {
      bool found = false;
      for (std::uint32_t i = 0; i < v.db_size; ++i)
        if (v.db[2 * i] == c.x && v.db[2 * i + 1] == c.y) {
          found = true;
          break;
        }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) p += std::norm(a);
  }
  return p;
}

double projection_mass(const JointState& state, const ProjectionSpec& spec) {
  if (state.rep != JointState::Rep::phase)
    throw std::invalid_argument("projection_mass: phase representation required");
  if (spec.s < 2) throw std::invalid_argument("projection_mass: s must be >= 2");
  double p = 0;
  for (const auto& [key, a] : state.amps) {
    if (collision_count(key, spec.s) < spec.min_count) continue;
    if (spec.exact_two_collisions && collision_count(key, 2) != spec.exact_j) continue;
    p += std::norm(a);
  }
  return std::sqrt(p);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2;
}

}  // namespace qmc::co
