#include "cohstate/json_io.hpp"

#include <string>
#include <vector>

namespace cohstate {

using nlohmann::json;

namespace {

const json& require(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw FormatError(path + key + ": missing field");
  }
  return doc.at(key);
}

int require_int(const json& doc, const std::string& key, const std::string& path) {
  const json& v = require(doc, key, path);
  if (!v.is_number_integer()) throw FormatError(path + key + ": expected an integer");
  return v.get<int>();
}

double require_number(const json& doc, const std::string& key, const std::string& path) {
  const json& v = require(doc, key, path);
  if (!v.is_number()) throw FormatError(path + key + ": expected a number");
  return v.get<double>();
}

std::vector<int> require_int_array(const json& doc, const std::string& key,
                                   const std::string& path) {
  const json& v = require(doc, key, path);
  if (!v.is_array()) throw FormatError(path + key + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw FormatError(path + key + "[" + std::to_string(i) + "]: expected an integer");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

json complex_to_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

json operator_to_json(const OperatorPoly& p) {
  json terms = json::array();
  for (const auto& t : normal_order(p).normal_terms()) {
    terms.push_back(json{{"re", t.coeff.real()},
                         {"im", t.coeff.imag()},
                         {"creators", t.creators},
                         {"annihilators", t.annihilators}});
  }
  return json{{"n", p.modes()}, {"terms", std::move(terms)}};
}

OperatorPoly operator_from_json(const json& doc) {
  const int n = require_int(doc, "n", "");
  if (n < 1) throw FormatError("n: must be >= 1");
  const json& terms = require(doc, "terms", "");
  if (!terms.is_array()) throw FormatError("terms: expected an array");
  OperatorPoly p(n);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string path = "terms[" + std::to_string(k) + "].";
    NormalTerm t;
    t.coeff = Complex(require_number(terms[k], "re", path),
                      terms[k].contains("im") ? require_number(terms[k], "im", path) : 0.0);
    t.creators = require_int_array(terms[k], "creators", path);
    t.annihilators = require_int_array(terms[k], "annihilators", path);
    for (const auto* list : {&t.creators, &t.annihilators}) {
      for (int i : *list) {
        if (i < 1 || i > n) {
          throw FormatError(path + (list == &t.creators ? "creators" : "annihilators") +
                            ": mode " + std::to_string(i) + " outside [1, " + std::to_string(n) +
                            "]");
        }
      }
    }
    p += OperatorPoly::from_normal(n, t);
  }
  return p;
}

json frame_to_json(const CoherentFrame& frame) {
  json rows = json::array();
  for (const auto& row : frame.rows()) {
    json r = json::array();
    for (Complex c : row) r.push_back(complex_to_json(c));
    rows.push_back(std::move(r));
  }
  return json{{"n", frame.modes()}, {"S", frame.species()}, {"alpha", std::move(rows)}};
}

CoherentFrame frame_from_json(const json& doc) {
  const int n = require_int(doc, "n", "");
  const int S = require_int(doc, "S", "");
  const json& alpha = require(doc, "alpha", "");
  if (!alpha.is_array()) throw FormatError("alpha: expected an array of rows");
  if (static_cast<int>(alpha.size()) != S) {
    throw FormatError("alpha: has " + std::to_string(alpha.size()) + " rows but S = " +
                      std::to_string(S));
  }
  std::vector<std::vector<Complex>> rows;
  for (std::size_t s = 0; s < alpha.size(); ++s) {
    const std::string path = "alpha[" + std::to_string(s) + "]";
    if (!alpha[s].is_array()) throw FormatError(path + ": expected an array");
    if (static_cast<int>(alpha[s].size()) != n) {
      throw FormatError(path + ": has " + std::to_string(alpha[s].size()) +
                        " entries but n = " + std::to_string(n));
    }
    std::vector<Complex> row;
    for (std::size_t i = 0; i < alpha[s].size(); ++i) {
      const std::string entry = path + "[" + std::to_string(i) + "].";
      const json& c = alpha[s][i];
      if (c.is_number()) {
        row.emplace_back(c.get<double>(), 0.0);
      } else {
        row.emplace_back(require_number(c, "re", entry),
                         c.contains("im") ? require_number(c, "im", entry) : 0.0);
      }
    }
    rows.push_back(std::move(row));
  }
  return CoherentFrame::validate(rows);
}

Occupancy occupancy_from_string(const std::string& text, const std::string& field) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    throw FormatError(field + ": not a JSON integer array: " + text);
  }
  if (!doc.is_array()) throw FormatError(field + ": expected an integer array such as [1,2]");
  Occupancy occ;
  for (const auto& v : doc) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw FormatError(field + ": entries must be nonnegative integers");
    }
    occ.push_back(v.get<int>());
  }
  return occ;
}

}  // namespace cohstate
