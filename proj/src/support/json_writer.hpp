#pragma once

// Minimal ordered JSON emitter.  Reports must serialize deterministically and
// with a fixed floating-point format (17 significant digits), which general
// purpose JSON libraries do not guarantee, so output goes through this writer.

#include <string>
#include <vector>

namespace focallab {

std::string format_double(double v);  // %.17g, never locale dependent

class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void value(double v);
  void value(int v);
  void value(long long v);
  void value(bool v);
  void value(const char* v);
  void value(const std::string& v);
  void null_value();
  void raw(const std::string& text);  // pre-rendered JSON fragment

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace focallab
