#include "qqinv/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qqinv {

namespace {

double number_at(const Json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size()) return out;
    throw RejectedInput("field \"" + field + "\": '" + s + "' is not a decimal number");
  }
  throw RejectedInput("field \"" + field + "\": expected a number, got " + std::string(v.type_name()));
}

const Json& array_of(const Json& v, std::size_t size, const std::string& field) {
  if (!v.is_array())
    throw RejectedInput("field \"" + field + "\": expected an array of " + std::to_string(size) +
                        ", got " + std::string(v.type_name()));
  if (v.size() != size)
    throw RejectedInput("field \"" + field + "\": expected " + std::to_string(size) +
                        " entries, got " + std::to_string(v.size()));
  return v;
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw RejectedInput("missing field \"" + where + key + "\"");
  return *it;
}

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

QubitQutritState parse_state(const Json& doc) {
  if (!doc.is_object()) throw RejectedInput("state document must be a JSON object");
  const bool has_abc = doc.contains("abc");
  const bool has_rho = doc.contains("rho");
  if (has_abc == has_rho) throw RejectedInput("state document needs exactly one of \"abc\" or \"rho\"");

  if (has_abc) {
    const Json& abc = doc["abc"];
    if (!abc.is_object()) throw RejectedInput("field \"abc\": expected an object");
    QubitQutritState s;
    const Json& a = array_of(member(abc, "a", "abc."), 3, "a");
    for (int i = 0; i < 3; ++i) s.a(i) = number_at(a[i], "a[" + std::to_string(i) + "]");
    const Json& b = array_of(member(abc, "b", "abc."), 8, "b");
    for (int k = 0; k < 8; ++k) s.b(k) = number_at(b[k], "b[" + std::to_string(k) + "]");
    const Json& C = array_of(member(abc, "C", "abc."), 3, "C");
    for (int i = 0; i < 3; ++i) {
      const std::string row = "C[" + std::to_string(i) + "]";
      const Json& r = array_of(C[i], 8, row);
      for (int k = 0; k < 8; ++k) s.C(i, k) = number_at(r[k], row + "[" + std::to_string(k) + "]");
    }
    return s;
  }

  const Json& rho = array_of(doc["rho"], 6, "rho");
  CMatrix m(6, 6);
  for (int i = 0; i < 6; ++i) {
    const std::string row = "rho[" + std::to_string(i) + "]";
    const Json& r = array_of(rho[i], 6, row);
    for (int j = 0; j < 6; ++j) {
      const std::string cell = row + "[" + std::to_string(j) + "]";
      const Json& z = array_of(r[j], 2, cell);
      m(i, j) = Complex(number_at(z[0], cell + ".re"), number_at(z[1], cell + ".im"));
    }
  }
  return from_matrix(m);
}

QubitQutritState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RejectedInput(path.string() + ": cannot open file for reading");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw RejectedInput(path.string() + ": malformed JSON (" + e.what() + ")");
  }
  try {
    return parse_state(doc);
  } catch (const RejectedInput& e) {
    throw RejectedInput(path.string() + ": invalid state: " + e.what());
  }
}

Json state_to_json(const QubitQutritState& s) {
  Json C = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 8; ++k) row.push_back(s.C(i, k));
    C.push_back(row);
  }
  Json a = Json::array(), b = Json::array();
  for (int i = 0; i < 3; ++i) a.push_back(s.a(i));
  for (int k = 0; k < 8; ++k) b.push_back(s.b(k));
  return {{"abc", {{"a", a}, {"b", b}, {"C", C}}}};
}

Json matrix_to_json(const CMatrix& rho) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < rho.cols(); ++j) row.push_back(complex_json(rho(i, j)));
    rows.push_back(row);
  }
  return {{"rho", rows}};
}

Json basis_to_json(const SuBasis& basis, const StructureConstants& sc) {
  Json d = Json::array(), f = Json::array();
  const int dim = sc.dim();
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b)
      for (int c = b; c < dim; ++c) {
        if (std::abs(sc.d(a, b, c)) > 1e-14) d.push_back({a + 1, b + 1, c + 1, sc.d(a, b, c)});
        if (a < b && b < c && std::abs(sc.f(a, b, c)) > 1e-14)
          f.push_back({a + 1, b + 1, c + 1, sc.f(a, b, c)});
      }
  return {{"label", std::string(to_string(basis.label))}, {"n", basis.n}, {"dim", dim}, {"d", d}, {"f", f}};
}

Json to_json(const PositivityReport& r) {
  Json j;
  j["t"] = r.t;
  j["S"] = r.S;
  j["S_bar"] = r.S_bar;
  j["casimir_exprs"] = r.casimir_exprs;
  j["verdict_S"] = r.verdict_S;
  j["verdict_casimir"] = r.verdict_casimir;
  j["psd_by_S"] = r.psd_by_S();
  j["psd_by_casimir"] = r.psd_by_casimir();
  j["consistent"] = r.consistent;
  j["casimirs"] = {{"raw", r.casimirs.raw}, {"normalized", r.casimirs.normalized}};
  if (r.eigenvalues) j["eigenvalues"] = *r.eigenvalues;
  return j;
}

Json to_json(const CheckReport& r) {
  Json items = Json::array();
  for (const auto& v : r.items) items.push_back({{"relation", v.relation}, {"max_violation", v.max_violation}});
  return {{"name", r.name},         {"passed", r.passed()}, {"tolerance", r.tolerance},
          {"seed", r.seed},         {"samples", r.samples}, {"worst", r.worst()},
          {"items", items}};
}

}  // namespace qqinv
