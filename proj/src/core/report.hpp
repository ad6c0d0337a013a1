#ifndef FBH_CORE_REPORT_HPP
#define FBH_CORE_REPORT_HPP

#include <string>
#include <vector>

namespace fbh {

// 17 significant digits: enough to round-trip any double, so identical runs
// emit byte-identical reports.
std::string fmt_double(double v);

// Minimal JSON emitter with caller-controlled key order. Reports must be
// byte-stable across runs, which rules out library re-serialization quirks.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(const std::string& s);
  void value(const char* s) { value(std::string(s)); }
  void value(double v);
  void value(long long v);
  void value(int v) { value(static_cast<long long>(v)); }
  void value(unsigned long long v);
  void value(bool b);
  void value_array(const std::vector<double>& vs);
  std::string take() { return std::move(out_); }

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;  // per nesting level
  bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace fbh

#endif
