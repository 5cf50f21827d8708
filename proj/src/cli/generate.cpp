#include "ovkit/cli/generate.hpp"

#include <fstream>

#include "ovkit/core/dataset.hpp"
#include "ovkit/core/errors.hpp"
#include "ovkit/core/rational.hpp"
#include "ovkit/core/rng.hpp"

namespace ovkit::cli {

namespace {

BitVector random_vector(std::size_t d, double p, SeededRng& rng) {
  BitVector x(d);
  for (std::size_t i = 0; i < d; ++i)
    if (rng.bernoulli(p)) x.set(i);
  return x;
}

VectorFamily random_family(std::size_t n, std::size_t d, double p, SeededRng& rng) {
  VectorFamily f(d);
  for (std::size_t k = 0; k < n; ++k) f.push_back(random_vector(d, p, rng));
  return f;
}

double parse_density(const std::string& text) {
  const Rat p = parse_rational(text);
  if (p < 0 || p > 1) throw InvalidArgument("density p must lie in [0, 1]");
  return static_cast<double>(to_long_double(p));
}

}  // namespace

GeneratedInstance generate_instance(const GenerateConfig& c) {
  if (c.n == 0) throw InvalidArgument("n must be positive");
  if (c.d == 0) throw InvalidArgument("d must be positive");
  if (c.families == 0) throw InvalidArgument("need at least one family");
  SeededRng rng(c.seed);
  GeneratedInstance out;

  if (c.model == "sparse") {
    if (c.m < c.d) throw InvalidArgument("sparse model needs universe m >= d");
    for (std::size_t f = 0; f < c.families; ++f) {
      VectorFamily family(c.m, c.d);
      for (std::size_t k = 0; k < c.n; ++k) {
        // Weight uniform in [0, d], then a uniform subset of that size (partial Fisher-Yates).
        const std::size_t weight = rng.uniform_below(c.d + 1);
        std::vector<std::size_t> coords(c.m);
        for (std::size_t i = 0; i < c.m; ++i) coords[i] = i;
        for (std::size_t i = 0; i < weight; ++i) std::swap(coords[i], coords[i + rng.uniform_below(c.m - i)]);
        coords.resize(weight);
        family.push_back(BitVector::from_indices(c.m, coords));
      }
      out.families.push_back(std::move(family));
    }
    return out;
  }

  const double p = parse_density(c.p);
  for (std::size_t f = 0; f < c.families; ++f) out.families.push_back(random_family(c.n, c.d, p, rng));
  if (c.model == "uniform") return out;
  if (c.families < 2) throw InvalidArgument("planted models need at least two families");

  const std::size_t i = rng.uniform_below(c.n);
  const std::size_t j = rng.uniform_below(c.n);
  BitVector& x = out.families[0].mutable_at(i);
  BitVector& y = out.families[1].mutable_at(j);
  if (c.model == "planted-orthogonal") {
    // y keeps density p on the complement of x and is zero on x's support.
    BitVector fresh(c.d);
    for (std::size_t t = 0; t < c.d; ++t)
      if (!x.test(t) && rng.bernoulli(p)) fresh.set(t);
    y = fresh;
    out.witness = {{"a_index", i}, {"b_index", j}, {"inner_product", 0}};
  } else if (c.model == "planted-ip") {
    if (c.w == 0 || c.w > c.d) throw InvalidArgument("planted-ip needs 1 <= w <= d");
    std::vector<std::size_t> coords(c.d);
    for (std::size_t t = 0; t < c.d; ++t) coords[t] = t;
    for (std::size_t t = 0; t < c.w; ++t) std::swap(coords[t], coords[t + rng.uniform_below(c.d - t)]);
    for (std::size_t t = 0; t < c.w; ++t) {
      x.set(coords[t]);
      y.set(coords[t]);
    }
    out.witness = {{"a_index", i}, {"b_index", j}, {"inner_product", inner_product(x, y)}};
  } else {
    throw InvalidArgument("unknown model '" + c.model + "'");
  }
  return out;
}

std::vector<std::filesystem::path> write_instance(const std::filesystem::path& prefix, const GenerateConfig& c,
                                                  const GeneratedInstance& instance) {
  std::vector<std::filesystem::path> paths;
  nlohmann::json files = nlohmann::json::array();
  std::error_code ec;
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path(), ec);
  for (std::size_t f = 0; f < instance.families.size(); ++f) {
    std::filesystem::path path = prefix;
    path += "." + std::to_string(f) + ".txt";
    save_family(path, instance.families[f]);
    files.push_back(path.filename().string());
    paths.push_back(path);
  }
  nlohmann::json sidecar = {{"model", c.model}, {"n", c.n},   {"d", c.d},     {"p", c.p},
                            {"w", c.w},         {"m", c.m},   {"families", c.families},
                            {"seed", std::to_string(c.seed)}, {"files", files}, {"witness", instance.witness}};
  std::filesystem::path json_path = prefix;
  json_path += ".json";
  std::ofstream out(json_path);
  if (!out) throw InvalidArgument("cannot write " + json_path.string());
  out << sidecar.dump(2) << '\n';
  paths.push_back(json_path);
  return paths;
}

}  // namespace ovkit::cli
