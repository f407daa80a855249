#include "gl2tf/local_function.hpp"

namespace gl2tf {

LocalFunction::LocalFunction(ShiftSpace shift, int depth, const std::map<Word, double>& entries)
    : table_(std::move(shift), depth) {
  for (const auto& [window, value] : entries) {
    if (static_cast<int>(window.size()) != table_.window_length())
      throw Error(ErrorCode::SchemaError, "window " + word_to_string(window) + " has the wrong length");
    if (!table_.shift().admissible(window))
      throw Error(ErrorCode::NotAdmissible, "window " + word_to_string(window) + " is not admissible");
    table_.set(window, value);
  }
  table_.require_complete();
}

LocalFunction LocalFunction::constant(const ShiftSpace& shift, double value) {
  WindowTable<double> t(shift, 0);
  for (Symbol s = 0; s < shift.alphabet_size(); ++s) t.set(std::span<const Symbol>(&s, 1), value);
  return LocalFunction(std::move(t));
}

LocalFunction LocalFunction::from_symbols(const ShiftSpace& shift, const std::vector<double>& per_symbol) {
  if (static_cast<int>(per_symbol.size()) != shift.alphabet_size())
    throw Error(ErrorCode::InvalidArgument, "from_symbols: one value per symbol required");
  WindowTable<double> t(shift, 0);
  for (Symbol s = 0; s < shift.alphabet_size(); ++s)
    t.set(std::span<const Symbol>(&s, 1), per_symbol[static_cast<std::size_t>(s)]);
  return LocalFunction(std::move(t));
}

LocalFunction LocalFunction::deepened(int depth) const {
  if (depth < this->depth()) throw Error(ErrorCode::InvalidArgument, "deepened: depth may only grow");
  WindowTable<double> t(shift(), depth);
  const int trim = depth - this->depth();
  const WordList windows = enumerate_words(shift(), 2 * depth + 1);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto w = windows[i];
    t.set(w, table_[w.subspan(static_cast<std::size_t>(trim), static_cast<std::size_t>(window_length()))]);
  }
  return LocalFunction(std::move(t));
}

LocalFunction LocalFunction::map(const std::function<double(double)>& f) const {
  WindowTable<double> t(shift(), depth());
  table_.for_each_window([&](std::span<const Symbol> w, const double& v) { t.set(w, f(v)); });
  return LocalFunction(std::move(t));
}

double LocalFunction::birkhoff_sum(const Point& x, long n) const {
  double sum = 0.0;
  const long k = depth();
  for (long j = 0; j < n; ++j) sum += table_[x.window(j - k, 2 * k + 1)];
  return sum;
}

}  // namespace gl2tf
