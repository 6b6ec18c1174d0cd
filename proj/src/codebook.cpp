#include "mecode/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mecode/error.hpp"

namespace mecode {

Codeword::Codeword(std::string bits) : bits_(std::move(bits)) {
  n1_ = static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

Codeword Codeword::from_string(std::string_view bits) {
  if (bits.empty()) throw ValidationError("codeword must not be empty", "codeword");
  if (bits.find_first_not_of("01") != std::string_view::npos) {
    throw ValidationError("codeword must contain only '0' and '1'", "codeword");
  }
  return Codeword{std::string(bits)};
}

bool Codeword::is_prefix_of(const Codeword& other) const noexcept {
  return bits_.size() <= other.bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

Codeword Codeword::operator+(const Codeword& tail) const { return Codeword{bits_ + tail.bits_}; }

Codeword Codeword::inverted() const {
  std::string flipped = bits_;
  for (char& c : flipped) c = c == '0' ? '1' : '0';
  return Codeword{std::move(flipped)};
}

double codeword_cost(const Codeword& cw, const CostModel& cm) {
  return static_cast<double>(cw.n0()) * cm.beta0() + static_cast<double>(cw.n1()) * cm.beta1();
}

double codeword_duration(const Codeword& cw, const CostModel& cm) {
  return static_cast<double>(cw.n0()) * cm.t0() + static_cast<double>(cw.n1()) * cm.t1();
}

std::string to_string(CodebookKind kind) {
  return kind == CodebookKind::fixed ? "fixed" : "prefix";
}

CodebookKind codebook_kind_from_string(std::string_view s) {
  if (s == "fixed") return CodebookKind::fixed;
  if (s == "prefix") return CodebookKind::prefix;
  throw ValidationError("expected 'fixed' or 'prefix', got '" + std::string(s) + "'", "kind");
}

bool is_prefix_free(std::span<const Codeword> words) {
  std::vector<const Codeword*> sorted;
  sorted.reserve(words.size());
  for (const auto& w : words) sorted.push_back(&w);
  std::sort(sorted.begin(), sorted.end(),
            [](const Codeword* a, const Codeword* b) { return *a < *b; });
  // In lexicographic order a word that prefixes anything prefixes its successor.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1]->is_prefix_of(*sorted[i])) return false;
  }
  return true;
}

bool is_prefix_free(const Codebook& cb) { return is_prefix_free(cb.entries()); }

Codebook Codebook::create(CodebookKind kind, std::vector<Codeword> entries) {
  if (entries.size() < 2) throw ValidationError("need at least 2 entries", "entries");
  std::set<std::string_view> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.str()).second) {
      throw ValidationError("duplicate codeword '" + e.str() + "'", "entries");
    }
  }
  if (kind == CodebookKind::fixed) {
    for (const auto& e : entries) {
      if (e.size() != entries.front().size()) {
        throw ValidationError("fixed codebook entries must share one length", "entries");
      }
    }
  } else if (!is_prefix_free(entries)) {
    throw ValidationError("prefix codebook violates the prefix condition", "entries");
  }
  return Codebook{kind, std::move(entries)};
}

Codebook Codebook::create(CodebookKind kind, std::span<const std::string_view> entries) {
  std::vector<Codeword> words;
  words.reserve(entries.size());
  for (auto s : entries) words.push_back(Codeword::from_string(s));
  return create(kind, std::move(words));
}

std::optional<std::size_t> Codebook::n() const noexcept {
  if (kind_ != CodebookKind::fixed) return std::nullopt;
  return entries_.front().size();
}

std::size_t Codebook::max_length() const noexcept {
  std::size_t len = 0;
  for (const auto& e : entries_) len = std::max(len, e.size());
  return len;
}

double Codebook::kraft_sum() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::ldexp(1.0, -static_cast<int>(e.size()));
  return sum;
}

nlohmann::json codebook_to_json(const Codebook& cb) {
  nlohmann::json j;
  j["kind"] = to_string(cb.kind());
  if (auto n = cb.n()) j["n"] = *n;
  auto& entries = j["entries"] = nlohmann::json::array();
  for (const auto& e : cb.entries()) entries.push_back(e.str());
  return j;
}

Codebook codebook_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("codebook must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "n" && key != "entries") {
      throw ParseError("unknown codebook field '" + key + "'");
    }
  }
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) throw ParseError("'kind' must be a string");
  const auto kind = codebook_kind_from_string(kind_it->get<std::string>());

  auto entries_it = j.find("entries");
  if (entries_it == j.end() || !entries_it->is_array()) {
    throw ParseError("'entries' must be an array");
  }
  std::vector<Codeword> words;
  for (const auto& e : *entries_it) {
    if (!e.is_string()) throw ParseError("codebook entries must be strings");
    words.push_back(Codeword::from_string(e.get<std::string>()));
  }
  auto cb = Codebook::create(kind, std::move(words));

  if (auto n_it = j.find("n"); n_it != j.end() && !n_it->is_null()) {
    if (!n_it->is_number_unsigned()) throw ParseError("'n' must be a non-negative integer");
    if (kind != CodebookKind::fixed) throw ParseError("'n' is only valid for fixed codebooks");
    if (n_it->get<std::size_t>() != *cb.n()) {
      throw ParseError("'n' does not match the entry length");
    }
  }
  return cb;
}

std::string codebook_to_json_text(const Codebook& cb) { return codebook_to_json(cb).dump(2); }

Codebook codebook_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return codebook_from_json(j);
}

}  // namespace mecode
