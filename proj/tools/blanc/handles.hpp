#ifndef BLANC_TOOLS_HANDLES_HPP
#define BLANC_TOOLS_HANDLES_HPP

#include <memory>
#include <stdexcept>
#include <string>

#include "blanc/blanc.h"

namespace blanc_cli {

struct BackendDeleter {
  void operator()(blanc_backend* b) const { blanc_backend_destroy(b); }
};
struct CorpusDeleter {
  void operator()(blanc_corpus* c) const { blanc_corpus_destroy(c); }
};
using BackendPtr = std::unique_ptr<blanc_backend, BackendDeleter>;
using CorpusPtr = std::unique_ptr<blanc_corpus, CorpusDeleter>;

/// A failed library call, carrying the status and blanc_last_error().
class ApiError : public std::runtime_error {
 public:
  explicit ApiError(blanc_status status)
      : std::runtime_error(std::string(blanc_status_name(status)) + ": " + blanc_last_error()),
        status_(status) {}
  blanc_status status() const { return status_; }

 private:
  blanc_status status_;
};

inline void check(blanc_status status) {
  if (status != BLANC_OK) throw ApiError(status);
}

/// Runs a buffer-writing call twice: once to size, once to fill.
template <typename F>
std::string fetch_text(F&& call) {
  std::size_t len = 0;
  blanc_status st = call(nullptr, 0, &len);
  if (st != BLANC_ERR_BUFFER_TOO_SMALL) check(st);
  std::string out(len + 1, '\0');
  check(call(out.data(), out.size(), &len));
  out.resize(len);
  return out;
}

}  // namespace blanc_cli

#endif  // BLANC_TOOLS_HANDLES_HPP
