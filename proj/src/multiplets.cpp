#include "swsh/multiplets.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "swsh/error.hpp"

namespace swsh {

std::int64_t MultipletSpectrum::count(int j) const {
  if (j < 0) return 0;
  const auto it = multiplicities.find(j);
  return it == multiplicities.end() ? 0 : it->second;
}

std::int64_t MultipletSpectrum::dimension() const {
  std::int64_t total = 0;
  for (const auto& [j, n] : multiplicities) {
    if (j <= j_max) total += (2 * static_cast<std::int64_t>(j) + 1) * n;
  }
  return total;
}

void MultipletSpectrum::normalize() {
  std::erase_if(multiplicities, [this](const auto& kv) { return kv.second == 0 || kv.first > j_max; });
}

namespace {

int max_support(const MultipletSpectrum& s) {
  int top = 0;
  for (const auto& [j, n] : s.multiplicities) {
    if (n != 0 && j <= s.j_max) top = std::max(top, j);
  }
  return top;
}

}  // namespace

MultipletSpectrum tensor_decompose(int a, int b) {
  if (a < 0 || b < 0) {
    throw Error(ErrorCode::NegativeSpin, "tensor_decompose needs a, b >= 0; got a=" +
                                             std::to_string(a) + ", b=" + std::to_string(b));
  }
  MultipletSpectrum out;
  out.j_max = a + b;
  out.complete = true;
  for (int j = std::abs(a - b); j <= a + b; ++j) out.multiplicities[j] = 1;
  return out;
}

MultipletSpectrum single_multiplet(int a) {
  if (a < 0) throw Error(ErrorCode::NegativeSpin, "spin must be nonnegative");
  MultipletSpectrum out;
  out.multiplicities[a] = 1;
  out.j_max = a;
  out.complete = true;
  return out;
}

MultipletSpectrum spectrum_tensor(const MultipletSpectrum& a, const MultipletSpectrum& b) {
  MultipletSpectrum out;
  if (a.complete && b.complete) {
    out.complete = true;
    out.j_max = max_support(a) + max_support(b);
  } else if (a.complete) {
    out.j_max = b.j_max - max_support(a);
  } else if (b.complete) {
    out.j_max = a.j_max - max_support(b);
  } else {
    // Unknown content of both factors can combine into any j.
    out.j_max = -1;
  }
  for (const auto& [ja, na] : a.multiplicities) {
    if (ja > a.j_max || na == 0) continue;
    for (const auto& [jb, nb] : b.multiplicities) {
      if (jb > b.j_max || nb == 0) continue;
      const MultipletSpectrum pair = tensor_decompose(ja, jb);
      for (const auto& [j, n] : pair.multiplicities) {
        if (j <= out.j_max) out.multiplicities[j] += n * na * nb;
      }
    }
  }
  out.normalize();
  return out;
}

MultipletSpectrum massless_spectrum(int h, int j_max) {
  if (j_max < std::abs(h)) {
    throw Error(ErrorCode::DomainError, "massless spectrum needs j_max >= |h|");
  }
  MultipletSpectrum out;
  out.j_max = j_max;
  for (int j = std::abs(h); j <= j_max; ++j) out.multiplicities[j] = 1;
  return out;
}

MultipletSpectrum massive_spectrum(int s, int j_max) {
  if (s < 0) throw Error(ErrorCode::NegativeSpin, "massive spectrum needs s >= 0");
  if (j_max < 0) throw Error(ErrorCode::DomainError, "j_max must be nonnegative");
  MultipletSpectrum out;
  out.j_max = j_max;
  for (int j = 0; j <= j_max; ++j) out.multiplicities[j] = j < s ? 2 * j + 1 : 2 * s + 1;
  return out;
}

std::vector<MultipletSpectrum> factor_search(const MultipletSpectrum& target, int a, int l_max,
                                             const FactorSearchOptions& options) {
  if (a < 0) throw Error(ErrorCode::NegativeSpin, "spin factor must be nonnegative");
  if (l_max < a) throw Error(ErrorCode::DomainError, "factor_search needs l_max >= a");
  const int window = std::min(target.j_max, l_max - a);
  if (window < 0) throw Error(ErrorCode::DomainError, "target has no sound window");
  const int l_top = window + a;
  const int cap = options.max_multiplicity;

  using Assignment = std::vector<std::int64_t>;  // O(l), l in [0, l_top]
  std::vector<Assignment> branches{Assignment(static_cast<std::size_t>(l_top + 1), 0)};

  // Peel j upward. At step j the unknowns entering are l = a - j (branched)
  // and l = a + j (forced by the target count at j).
  for (int j = 0; j <= window; ++j) {
    const int low = a - j;
    if (j > 0 && low >= 0) {
      std::vector<Assignment> expanded;
      for (const auto& branch : branches) {
        for (int v = 0; v <= cap; ++v) {
          Assignment next = branch;
          next[static_cast<std::size_t>(low)] = v;
          expanded.push_back(std::move(next));
        }
      }
      if (static_cast<int>(expanded.size()) > options.branch_limit) {
        throw Error(ErrorCode::SearchBudgetExceeded,
                    "factor_search opened " + std::to_string(expanded.size()) +
                        " branches (limit " + std::to_string(options.branch_limit) + ")");
      }
      branches = std::move(expanded);
    }

    const int top = a + j;
    std::vector<Assignment> survivors;
    for (auto& branch : branches) {
      std::int64_t known = 0;
      for (int l = std::abs(a - j); l < top; ++l) known += branch[static_cast<std::size_t>(l)];
      const std::int64_t forced = target.count(j) - known;
      if (forced < 0 || forced > cap) continue;
      branch[static_cast<std::size_t>(top)] = forced;
      survivors.push_back(std::move(branch));
    }
    branches = std::move(survivors);
    if (branches.empty()) break;
  }

  std::vector<MultipletSpectrum> solutions;
  for (const auto& branch : branches) {
    MultipletSpectrum o;
    o.j_max = l_top;
    for (int l = 0; l <= l_top; ++l) {
      if (branch[static_cast<std::size_t>(l)] != 0) {
        o.multiplicities[l] = branch[static_cast<std::size_t>(l)];
      }
    }
    solutions.push_back(std::move(o));
  }
  std::sort(solutions.begin(), solutions.end(),
            [](const auto& x, const auto& y) { return x.multiplicities < y.multiplicities; });
  return solutions;
}

void write_spectrum_json(std::ostream& out, const MultipletSpectrum& s) {
  nlohmann::ordered_json doc;
  doc["j_max"] = s.j_max;
  doc["multiplicities"] = nlohmann::ordered_json::object();
  for (const auto& [j, n] : s.multiplicities) {
    if (n != 0 && j <= s.j_max) doc["multiplicities"][std::to_string(j)] = n;
  }
  out << doc.dump() << '\n';
}

MultipletSpectrum read_spectrum_json(std::istream& in) {
  try {
    const auto doc = nlohmann::json::parse(in);
    MultipletSpectrum s;
    s.j_max = doc.at("j_max").get<int>();
    for (const auto& [key, value] : doc.at("multiplicities").items()) {
      const int j = std::stoi(key);
      const auto n = value.get<std::int64_t>();
      if (j < 0 || n < 0) throw Error(ErrorCode::ParseError, "negative spin or multiplicity");
      s.multiplicities[j] = n;
    }
    s.normalize();
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("spectrum JSON: ") + ex.what());
  } catch (const std::logic_error& ex) {
    throw Error(ErrorCode::ParseError, std::string("spectrum JSON: ") + ex.what());
  }
}

}  // namespace swsh
