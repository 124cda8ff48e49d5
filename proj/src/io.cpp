#include "resfront/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "resfront/error.hpp"
#include "resfront/mechanism.hpp"

namespace resfront {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

Rational parse_fraction(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw InputError(where + ": expected a fraction string such as \"7/10\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::vector<int> patient_list(const json& arr, const std::map<std::string, int>& index,
                              const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected an array of patient ids");
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string id = as_string(arr[i], where + "[" + std::to_string(i) + "]");
    auto it = index.find(id);
    if (it == index.end()) throw InputError(where + ": unknown patient '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

InstanceDocument parse_instance_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("instance: expected a JSON object");

  InstanceDocument doc;
  std::map<std::string, int> patient_index;
  const json& patients = require(root, "patients", "instance");
  if (!patients.is_array()) throw InputError("patients: expected an array");
  for (std::size_t i = 0; i < patients.size(); ++i) {
    const std::string id = as_string(patients[i], "patients[" + std::to_string(i) + "]");
    if (!patient_index.emplace(id, static_cast<int>(i)).second) {
      throw InputError("patients: duplicate patient id '" + id + "'");
    }
    doc.instance.patients.push_back(id);
  }

  const json& categories = require(root, "categories", "instance");
  if (!categories.is_array()) throw InputError("categories: expected an array");
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const std::string where = "categories[" + std::to_string(i) + "]";
    const json& c = categories[i];
    if (!c.is_object()) throw InputError(where + ": expected an object");
    Category cat;
    cat.id = as_string(require(c, "id", where), where + ".id");
    const json& quota = require(c, "quota", where);
    if (!quota.is_number_integer()) throw InputError(where + ".quota: expected an integer");
    cat.quota = quota.get<int>();
    cat.eligible = patient_list(require(c, "eligible", where), patient_index, where + ".eligible");
    if (auto it = c.find("beneficiary"); it != c.end()) {
      cat.beneficiary = patient_list(*it, patient_index, where + ".beneficiary");
    }
    doc.instance.categories.push_back(std::move(cat));
  }
  validate_instance(doc.instance);

  if (auto it = root.find("beta_star"); it != root.end() && !it->is_null()) {
    doc.beta_star = parse_fraction(*it, "beta_star");
    validate_problem({doc.instance, *doc.beta_star});
  }
  if (auto it = root.find("priority"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) throw InputError("priority: expected an object keyed by category id");
    std::vector<std::vector<int>> lists;
    for (const auto& cat : doc.instance.categories) {
      auto entry = it->find(cat.id);
      if (entry == it->end()) throw InputError("priority: missing category '" + cat.id + "'");
      lists.push_back(patient_list(*entry, patient_index, "priority." + cat.id));
      if (static_cast<int>(lists.back().size()) != doc.instance.num_patients()) {
        throw InputError("priority." + cat.id + ": must list every patient exactly once");
      }
    }
    if (it->size() != doc.instance.categories.size()) {
      throw InputError("priority: unknown category id");
    }
    PriorityOrder order = priority_from_lists(lists);
    validate_priority(doc.instance, order);
    doc.priority = std::move(order);
  }
  if (auto it = root.find("meta"); it != root.end() && it->is_object()) {
    if (auto seed = it->find("seed"); seed != it->end() && seed->is_number_unsigned()) {
      doc.seed = seed->get<std::uint64_t>();
    }
  }
  return doc;
}

InstanceDocument load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance_json(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json instance_to_json(const InstanceDocument& doc) {
  const Instance& inst = doc.instance;
  json root;
  root["patients"] = inst.patients;
  json cats = json::array();
  for (const auto& c : inst.categories) {
    json jc;
    jc["id"] = c.id;
    jc["quota"] = c.quota;
    jc["eligible"] = json::array();
    for (int p : c.eligible) jc["eligible"].push_back(inst.patients[p]);
    jc["beneficiary"] = json::array();
    for (int p : c.beneficiary) jc["beneficiary"].push_back(inst.patients[p]);
    cats.push_back(std::move(jc));
  }
  root["categories"] = std::move(cats);
  if (doc.beta_star) root["beta_star"] = doc.beta_star->to_string();
  if (doc.priority) {
    json pri = json::object();
    for (int c = 0; c < inst.num_categories(); ++c) {
      json list = json::array();
      for (int p : priority_list(*doc.priority, c)) list.push_back(inst.patients[p]);
      pri[inst.categories[c].id] = std::move(list);
    }
    root["priority"] = std::move(pri);
  }
  if (doc.seed) root["meta"] = {{"seed", *doc.seed}};
  return root;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_patient_subset(const Instance& inst, const std::string& text) {
  std::map<std::string, int> index;
  for (int p = 0; p < inst.num_patients(); ++p) index[inst.patients[p]] = p;
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError("--subset: unknown patient '" + id + "'");
    return it->second;
  };
  std::vector<char> chosen(inst.num_patients(), 0);
  std::istringstream is(text);
  for (std::string token; std::getline(is, token, ',');) {
    if (token.empty()) continue;
    if (auto dots = token.find(".."); dots != std::string::npos) {
      int lo = lookup(token.substr(0, dots));
      int hi = lookup(token.substr(dots + 2));
      if (lo > hi) std::swap(lo, hi);
      for (int p = lo; p <= hi; ++p) chosen[p] = 1;
    } else {
      chosen[lookup(token)] = 1;
    }
  }
  std::vector<int> out;
  for (int p = 0; p < inst.num_patients(); ++p) {
    if (chosen[p]) out.push_back(p);
  }
  return out;
}

json matching_to_json(const SeatInstance& si, const Matching& m) {
  const Instance& inst = si.instance();
  const MatchPoint pt = match_point(si, m);
  json assignment = json::object();
  for (int p = 0; p < m.num_patients(); ++p) {
    if (m.patient_matched(p)) {
      assignment[inst.patients[p]] = inst.categories[si.seat(m.seat_of(p)).category].id;
    }
  }
  return {{"assignment", std::move(assignment)}, {"e", pt.e}, {"b", pt.b}};
}

std::string frontier_csv(const Frontier& f) {
  std::ostringstream os;
  os << "e,b,beta_num,beta_den,is_kink\n";
  for (const auto& fp : f.points) {
    os << fp.point.e << "," << fp.point.b << ",";
    if (fp.point.e == 0) {
      os << "undefined,undefined";
    } else {
      const Rational beta = beneficiary_share(fp.point);
      os << beta.num() << "," << beta.den();
    }
    os << "," << (fp.is_kink ? 1 : 0) << "\n";
  }
  return os.str();
}

json witnesses_json(const SeatInstance& si, const Frontier& f) {
  json arr = json::array();
  for (const auto& fp : f.points) {
    arr.push_back(fp.witness ? matching_to_json(si, *fp.witness) : json(nullptr));
  }
  return {{"witnesses", std::move(arr)}};
}

json frontier_json(const SeatInstance& si, const Frontier& f, bool witnesses) {
  json points = json::array();
  for (const auto& fp : f.points) {
    json jp{{"e", fp.point.e}, {"b", fp.point.b}, {"is_kink", fp.is_kink}};
    jp["beta"] = fp.point.e == 0 ? json(nullptr) : json(beneficiary_share(fp.point).to_string());
    if (witnesses) jp["witness"] = fp.witness ? matching_to_json(si, *fp.witness) : json(nullptr);
    points.push_back(std::move(jp));
  }
  return {{"points", std::move(points)}};
}

}  // namespace resfront
