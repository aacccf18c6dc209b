#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "fusionforge/core.hpp"

namespace fusionforge {

class ParseError : public FusionError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : FusionError("parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// A parsed record: the ring plus any extra fields carried by the source.
struct RingRecord {
  FusionData ring;
  std::string declaredFPdim;
  std::vector<std::string> declaredType;
  std::map<std::string, std::string> extra;  // e.g. "codegrees", "notes"
  int line = 0;
};

std::string formatNumber(long double x);
std::string renderList(const std::vector<int>& v);
std::string renderList(const std::vector<long long>& v);

// `FPdim <N>; type [..]; duality [..]; N = [[[..]]]`
std::string renderText(const FusionData& data);
std::string renderJson(const FusionData& data);

// Accepts both the text format and JSONL; '#' lines and blank lines are skipped.
std::vector<RingRecord> parseRecords(std::istream& in);
std::vector<RingRecord> parseRecordsFromString(const std::string& text);
std::vector<RingRecord> loadRecords(const std::string& path);

std::vector<long long> parseIntList(const std::string& s);

}  // namespace fusionforge
