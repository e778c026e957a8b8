#include "polyint/io.hpp"

#include "polyint/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace polyint::io {

namespace {

using nlohmann::json;

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first occurrence of "key" (JSON objects keep no positions).
int line_of_key(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 1 : line_at(text, pos);
}

struct Context {
  const std::string& text;
  const std::string& origin;

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw InputError(fmt::format("{}:{}: {}", origin, line_of_key(text, key), msg));
  }

  const json& field(const json& obj, const std::string& key) const {
    if (!obj.contains(key)) fail("kind", fmt::format("missing field '{}'", key));
    return obj.at(key);
  }

  double number(const json& obj, const std::string& key) const {
    const json& v = field(obj, key);
    if (!v.is_number()) fail(key, fmt::format("field '{}' must be a number", key));
    return v.get<double>();
  }

  Vec vector(const json& obj, const std::string& key) const {
    const json& v = field(obj, key);
    if (!v.is_array() || v.empty()) fail(key, fmt::format("field '{}' must be a non-empty array", key));
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(key, fmt::format("field '{}' has a non-numeric entry", key));
      out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
  }

  Mat matrix(const json& obj, const std::string& key) const {
    const json& v = field(obj, key);
    if (!v.is_array() || v.empty()) fail(key, "rotation must be an array of rows");
    const std::size_t n = v.size();
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i].is_array() || v[i].size() != n) fail(key, "rotation must be square");
      for (std::size_t j = 0; j < n; ++j) {
        if (!v[i][j].is_number()) fail(key, "rotation has a non-numeric entry");
        out(i, j) = v[i][j].get<double>();
      }
    }
    return out;
  }
};

}  // namespace

ConvexBody parse_body(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}:{}: malformed JSON ({})", origin,
                                 line_at(text, e.byte > 0 ? e.byte - 1 : 0), e.what()));
  }
  const Context ctx{text, origin};
  if (!doc.is_object()) throw InputError(fmt::format("{}:1: body must be a JSON object", origin));
  const json& kind_field = ctx.field(doc, "kind");
  if (!kind_field.is_string()) ctx.fail("kind", "field 'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();

  const Vec center = doc.contains("center") ? ctx.vector(doc, "center") : Vec();
  const Mat rotation = doc.contains("rotation") ? ctx.matrix(doc, "rotation") : Mat();
  try {
    if (kind == "ball") {
      const double radius = doc.contains("radius") ? ctx.number(doc, "radius") : 1.0;
      int dim = 0;
      if (doc.contains("dim")) {
        const double d = ctx.number(doc, "dim");
        if (d != std::floor(d)) ctx.fail("dim", "field 'dim' must be an integer");
        dim = static_cast<int>(d);
      } else if (center.size() > 0) {
        dim = static_cast<int>(center.size());
      } else {
        ctx.fail("kind", "ball needs 'dim' or 'center'");
      }
      if (rotation.size() > 0) ctx.fail("rotation", "a ball takes no rotation");
      return ConvexBody::ball(dim, radius, center);
    }
    if (kind == "ellipsoid") return ConvexBody::ellipsoid(ctx.vector(doc, "semi_axes"), center, rotation);
    if (kind == "superellipsoid")
      return ConvexBody::superellipsoid(ctx.number(doc, "exponent"), ctx.vector(doc, "semi_axes"),
                                        center, rotation);
    if (kind == "revolution") {
      const Vec c = ctx.vector(doc, "coeffs");
      return ConvexBody::revolution(RevolutionProfile(std::vector<double>(c.data(), c.data() + c.size())),
                                    center, rotation);
    }
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(origin + ":", 0) == 0) throw;
    // Point at the field the constructor complained about.
    std::string key = "kind";
    for (const char* k : {"semi", "exponent", "coeff", "profile", "center", "rotation", "frame", "radius", "dim"})
      if (msg.find(k) != std::string::npos) {
        key = k;
        break;
      }
    if (key == "semi") key = "semi_axes";
    if (key == "coeff" || key == "profile") key = "coeffs";
    if (key == "frame") key = "rotation";
    if (!doc.contains(key)) key = "kind";
    throw InputError(fmt::format("{}:{}: {}", origin, line_of_key(text, key), msg));
  }
  ctx.fail("kind", fmt::format("unknown kind '{}' (expected ball, ellipsoid, superellipsoid, revolution)", kind));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConvexBody load_body(const std::string& path) { return parse_body(read_file(path), path); }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw InputError(fmt::format("'{}' is not a number in list '{}'", item, text));
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

Vec parse_vector(const std::string& text, bool normalize) {
  const std::vector<double> v = parse_list(text);
  Vec out = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
  if (normalize) {
    const double n = out.norm();
    if (!(n > 0.0)) throw InputError("direction must be non-zero");
    out /= n;
  }
  return out;
}

AlphaRange parse_alpha(const std::string& text) {
  std::stringstream ss(text);
  std::string a;
  std::string b;
  std::string k;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, k) )
    throw InputError(fmt::format("alpha range '{}' must look like MIN:MAX:K", text));
  AlphaRange r;
  r.min = parse_list(a).at(0);
  r.max = parse_list(b).at(0);
  const double kk = parse_list(k).at(0);
  if (kk != std::floor(kk) || kk < 4) throw InputError("alpha sample count K must be an integer >= 4");
  r.samples = static_cast<int>(kk);
  if (!(r.min > 0.0) || !(r.max > r.min)) throw InputError("alpha range must satisfy 0 < MIN < MAX");
  return r;
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

}  // namespace polyint::io
