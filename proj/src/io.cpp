#include "fusionforge/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace fusionforge {

using nlohmann::json;

std::string formatNumber(long double x) {
  long double r = std::round(x);
  if (std::fabs(x - r) < 1e-9L * std::max<long double>(1, std::fabs(x))) {
    std::ostringstream os;
    os << static_cast<long long>(r);
    return os.str();
  }
  std::ostringstream os;
  os << std::setprecision(12) << static_cast<double>(x);
  return os.str();
}

std::string renderList(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string renderList(const std::vector<long long>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

namespace {

std::string renderTensor(const FusionData& f) {
  std::string s = "[";
  for (int i = 0; i < f.rank; ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < f.rank; ++j) {
      if (j) s += ",";
      s += "[";
      for (int k = 0; k < f.rank; ++k) {
        if (k) s += ",";
        s += std::to_string(f(i, j, k));
      }
      s += "]";
    }
    s += "]";
  }
  return s + "]";
}

// Type in basis order, as printed alongside the tensor.
std::vector<std::string> typeStrings(const FPdims& d) {
  std::vector<std::string> t;
  for (long double x : d.values) t.push_back(formatNumber(x));
  return t;
}

FusionData ringFromJson(const json& tensor, const json& duality) {
  auto n = tensor.get<std::vector<std::vector<std::vector<int>>>>();
  std::vector<int> dual;
  if (duality.is_null()) {
    // Derive the duality from the tensor: i* is the j with N[i][j][0] = 1.
    int r = static_cast<int>(n.size());
    dual.assign(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (n[i][j][0] == 1) dual[i] = j;
  } else {
    dual = duality.get<std::vector<int>>();
  }
  return FusionData::fromNested(n, dual);
}

RingRecord parseJsonLine(const std::string& line, int lineNo) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), lineNo, static_cast<int>(e.byte));
  }
  if (!j.contains("tensor")) throw ParseError("missing field 'tensor'", lineNo, 1);
  RingRecord rec;
  rec.line = lineNo;
  try {
    rec.ring = ringFromJson(j["tensor"], j.contains("duality") ? j["duality"] : json());
  } catch (const std::exception& e) {
    throw ParseError(e.what(), lineNo, 1);
  }
  if (j.contains("fpdim")) rec.declaredFPdim = j["fpdim"].dump();
  if (j.contains("type"))
    for (const auto& x : j["type"]) rec.declaredType.push_back(x.dump());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "tensor" || k == "duality" || k == "type" || k == "fpdim" || k == "rank") continue;
    rec.extra[k] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
  }
  return rec;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

RingRecord parseTextLine(const std::string& line, int lineNo) {
  RingRecord rec;
  rec.line = lineNo;
  json tensor, duality;
  size_t pos = 0;
  bool haveTensor = false;
  while (pos < line.size()) {
    size_t end = line.find(';', pos);
    if (end == std::string::npos) end = line.size();
    std::string field = trim(line.substr(pos, end - pos));
    int column = static_cast<int>(pos) + 1;
    pos = end + 1;
    if (field.empty()) continue;
    size_t sp = field.find_first_of(" =");
    std::string key = field.substr(0, sp);
    std::string value = sp == std::string::npos ? "" : trim(field.substr(sp));
    if (!value.empty() && value[0] == '=') value = trim(value.substr(1));
    try {
      if (key == "FPdim") {
        rec.declaredFPdim = value;
      } else if (key == "type") {
        for (const auto& x : json::parse(value)) rec.declaredType.push_back(x.dump());
      } else if (key == "duality") {
        duality = json::parse(value);
      } else if (key == "N") {
        tensor = json::parse(value);
        haveTensor = true;
      } else {
        rec.extra[key] = value;
      }
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed field '") + key + "'", lineNo,
                       column + static_cast<int>(e.byte));
    }
  }
  if (!haveTensor) throw ParseError("missing field 'N'", lineNo, 1);
  try {
    rec.ring = ringFromJson(tensor, duality);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), lineNo, 1);
  }
  return rec;
}

}  // namespace

std::string renderText(const FusionData& f) {
  FPdims d = fpdims(f);
  std::ostringstream os;
  os << "FPdim " << formatNumber(d.integral ? static_cast<long double>(d.globalExact) : d.globalApprox)
     << "; type [";
  auto t = typeStrings(d);
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << "]; duality " << renderList(f.duality) << "; N = " << renderTensor(f);
  return os.str();
}

std::string renderJson(const FusionData& f) {
  FPdims d = fpdims(f);
  json j;
  j["rank"] = f.rank;
  if (d.integral)
    j["type"] = d.exact;
  else {
    std::vector<double> v(d.values.begin(), d.values.end());
    j["type"] = v;
  }
  j["duality"] = f.duality;
  j["tensor"] = f.nested();
  RingSummary s = summarize(f);
  j["flags"] = {{"commutative", s.commutative}, {"pointed", s.pointed},
                {"perfect", s.perfect},         {"simple", s.simple},
                {"oneFrobenius", s.oneFrobenius}, {"mnsd", s.mnsd},
                {"multiplicity", s.multiplicity}};
  return j.dump();
}

std::vector<RingRecord> parseRecords(std::istream& in) {
  std::vector<RingRecord> out;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '{')
      out.push_back(parseJsonLine(t, lineNo));
    else if (t.rfind("FPdim", 0) == 0 || t.rfind("N", 0) == 0 || t.rfind("type", 0) == 0 ||
             t.rfind("duality", 0) == 0)
      out.push_back(parseTextLine(t, lineNo));
    else
      throw ParseError("unrecognized record", lineNo, 1);
  }
  return out;
}

std::vector<RingRecord> parseRecordsFromString(const std::string& text) {
  std::istringstream is(text);
  return parseRecords(is);
}

std::vector<RingRecord> loadRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  return parseRecords(in);
}

std::vector<long long> parseIntList(const std::string& s) {
  std::vector<long long> out;
  std::string cur;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      cur += c;
    } else if (!cur.empty()) {
      out.push_back(std::stoll(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::stoll(cur));
  return out;
}

}  // namespace fusionforge
