#include "dlpp/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dlpp/errors.hpp"
#include "json.hpp"

namespace dlpp {

using Json = nlohmann::ordered_json;

namespace {

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key, "missing field");
  return *it;
}

std::string get_string(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_string()) throw ValidationError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double get_number(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_number()) throw ValidationError(path + "." + key, "expected a number");
  return v.get<double>();
}

const Json& get_array(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_array()) throw ValidationError(path + "." + key, "expected an array");
  return v;
}

NodeId parse_node(const Json& j, const std::string& path) {
  NodeId n;
  n.terminal = get_string(j, "terminal", path);
  try {
    n.sort = parse_sort(get_string(j, "sort", path));
  } catch (const ParseError& e) {
    throw ValidationError(path + ".sort", e.what());
  }
  const Json& day = field(j, "day", path);
  if (!day.is_number_integer()) throw ValidationError(path + ".day", "expected an integer");
  n.day = day.get<int>();
  return n;
}

Json node_json(const NodeId& n) {
  Json j;
  j["terminal"] = n.terminal;
  j["sort"] = to_string(n.sort);
  j["day"] = n.day;
  return j;
}

std::map<std::string, std::size_t> index_ids(const Json& arr, const std::string& path) {
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string item = path + "[" + std::to_string(i) + "]";
    const std::string id = get_string(arr[i], "id", item);
    if (!ids.emplace(id, i).second) throw ValidationError(item + ".id", "duplicate id '" + id + "'");
  }
  return ids;
}

std::size_t resolve(const std::map<std::string, std::size_t>& ids, const std::string& id,
                    const std::string& path, const char* what) {
  auto it = ids.find(id);
  if (it == ids.end()) throw ValidationError(path, std::string("unknown ") + what + " '" + id + "'");
  return it->second;
}

ReferencePlan parse_reference(const Json& arr, const std::map<std::string, std::size_t>& sp_ids,
                              const std::map<std::string, std::size_t>& tt_ids,
                              const std::string& path) {
  if (!arr.is_array()) throw ValidationError(path, "expected an array");
  ReferencePlan ref;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string item = path + "[" + std::to_string(i) + "]";
    const auto s = resolve(sp_ids, get_string(arr[i], "sort_pair", item), item + ".sort_pair",
                           "sort pair");
    const auto v = resolve(tt_ids, get_string(arr[i], "trailer_type", item), item + ".trailer_type",
                           "trailer type");
    const Json& count = field(arr[i], "count", item);
    if (!count.is_number_integer()) throw ValidationError(item + ".count", "expected an integer");
    if (!ref.gamma.emplace(std::make_pair(s, v), count.get<int>()).second) {
      throw ValidationError(item, "duplicate entry");
    }
  }
  return ref;
}

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("$", "expected an object");
  Instance inst;

  const Json& tts = get_array(doc, "trailer_types", "$");
  const auto tt_ids = index_ids(tts, "trailer_types");
  for (std::size_t v = 0; v < tts.size(); ++v) {
    const std::string path = "trailer_types[" + std::to_string(v) + "]";
    inst.trailer_types.push_back(TrailerType{get_string(tts[v], "id", path),
                                             get_number(tts[v], "capacity", path),
                                             get_number(tts[v], "cost", path)});
  }

  const Json& sps = get_array(doc, "sort_pairs", "$");
  const auto sp_ids = index_ids(sps, "sort_pairs");
  std::map<std::string, std::size_t> load_pair_ids;
  for (std::size_t s = 0; s < sps.size(); ++s) {
    const std::string path = "sort_pairs[" + std::to_string(s) + "]";
    SortPair sp;
    sp.id = get_string(sps[s], "id", path);
    sp.origin = parse_node(field(sps[s], "origin", path), path + ".origin");
    sp.destination = parse_node(field(sps[s], "destination", path), path + ".destination");
    const Json& allowed = get_array(sps[s], "allowed_trailers", path);
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      const std::string apath = path + ".allowed_trailers[" + std::to_string(i) + "]";
      if (!allowed[i].is_string()) throw ValidationError(apath, "expected a string");
      sp.allowed_trailers.push_back(resolve(tt_ids, allowed[i].get<std::string>(), apath,
                                            "trailer type"));
    }
    std::sort(sp.allowed_trailers.begin(), sp.allowed_trailers.end());
    if (auto it = sps[s].find("load_pair"); it != sps[s].end() && !it->is_null()) {
      if (!it->is_string()) throw ValidationError(path + ".load_pair", "expected a string");
      const std::string lp_id = it->get<std::string>();
      auto [pos, inserted] = load_pair_ids.emplace(lp_id, inst.load_pairs.size());
      if (inserted) inst.load_pairs.push_back(LoadPair{lp_id, {}});
      inst.load_pairs[pos->second].members.push_back(s);
      sp.load_pair = pos->second;
    }
    inst.sort_pairs.push_back(std::move(sp));
  }

  const Json& ks = get_array(doc, "commodities", "$");
  index_ids(ks, "commodities");
  for (std::size_t k = 0; k < ks.size(); ++k) {
    const std::string path = "commodities[" + std::to_string(k) + "]";
    Commodity c;
    c.id = get_string(ks[k], "id", path);
    c.volume = get_number(ks[k], "volume", path);
    try {
      c.service_class = parse_service_class(get_string(ks[k], "service_class", path));
    } catch (const ParseError& e) {
      throw ValidationError(path + ".service_class", e.what());
    }
    c.primary = resolve(sp_ids, get_string(ks[k], "primary", path), path + ".primary", "sort pair");
    if (auto it = ks[k].find("alternates"); it != ks[k].end()) {
      if (!it->is_array()) throw ValidationError(path + ".alternates", "expected an array");
      for (std::size_t a = 0; a < it->size(); ++a) {
        const std::string apath = path + ".alternates[" + std::to_string(a) + "]";
        const Json& alt = (*it)[a];
        c.alternates.push_back(
            Alternate{resolve(sp_ids, get_string(alt, "sort_pair", apath), apath + ".sort_pair",
                              "sort pair"),
                      get_number(alt, "distance", apath)});
      }
    }
    inst.commodities.push_back(std::move(c));
  }

  if (auto it = doc.find("reference_plan"); it != doc.end() && !it->is_null()) {
    inst.reference_plan = parse_reference(*it, sp_ids, tt_ids, "reference_plan");
  }

  validate(inst);
  return inst;
}

Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Instance load_instance(std::istream& in) { return parse_instance(parse_json(in)); }

Instance load_instance_string(const std::string& text) {
  std::istringstream in(text);
  return load_instance(in);
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return load_instance(in);
}

std::string save_instance(const Instance& inst) {
  Json doc;
  Json sps = Json::array();
  for (const auto& sp : inst.sort_pairs) {
    Json j;
    j["id"] = sp.id;
    j["origin"] = node_json(sp.origin);
    j["destination"] = node_json(sp.destination);
    Json allowed = Json::array();
    for (auto v : sp.allowed_trailers) allowed.push_back(inst.trailer_types[v].id);
    j["allowed_trailers"] = std::move(allowed);
    if (sp.load_pair) j["load_pair"] = inst.load_pairs[*sp.load_pair].id;
    sps.push_back(std::move(j));
  }
  doc["sort_pairs"] = std::move(sps);

  Json tts = Json::array();
  for (const auto& t : inst.trailer_types) {
    tts.push_back(Json{{"id", t.id}, {"capacity", t.capacity}, {"cost", t.cost}});
  }
  doc["trailer_types"] = std::move(tts);

  Json ks = Json::array();
  for (const auto& c : inst.commodities) {
    Json j;
    j["id"] = c.id;
    j["volume"] = c.volume;
    j["service_class"] = to_string(c.service_class);
    j["primary"] = inst.sort_pairs[c.primary].id;
    Json alts = Json::array();
    for (const auto& a : c.alternates) {
      alts.push_back(Json{{"sort_pair", inst.sort_pairs[a.sort_pair].id}, {"distance", a.distance}});
    }
    j["alternates"] = std::move(alts);
    ks.push_back(std::move(j));
  }
  doc["commodities"] = std::move(ks);

  if (inst.reference_plan) {
    Json ref = Json::array();
    for (const auto& [key, count] : inst.reference_plan->gamma) {
      ref.push_back(Json{{"sort_pair", inst.sort_pairs[key.first].id},
                         {"trailer_type", inst.trailer_types[key.second].id},
                         {"count", count}});
    }
    doc["reference_plan"] = std::move(ref);
  } else {
    doc["reference_plan"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

void save_instance_file(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << save_instance(inst);
}

ReferencePlan load_reference_plan_string(const Instance& inst, const std::string& text) {
  std::istringstream in(text);
  Json doc = parse_json(in);
  std::map<std::string, std::size_t> sp_ids, tt_ids;
  for (std::size_t s = 0; s < inst.sort_pairs.size(); ++s) sp_ids[inst.sort_pairs[s].id] = s;
  for (std::size_t v = 0; v < inst.trailer_types.size(); ++v) tt_ids[inst.trailer_types[v].id] = v;
  if (doc.is_object()) {
    if (doc.contains("reference_plan")) return parse_reference(doc["reference_plan"], sp_ids, tt_ids, "reference_plan");
    if (doc.contains("y")) return parse_reference(doc["y"], sp_ids, tt_ids, "y");
    throw ValidationError("$", "expected a 'y' or 'reference_plan' list");
  }
  return parse_reference(doc, sp_ids, tt_ids, "$");
}

}  // namespace dlpp
