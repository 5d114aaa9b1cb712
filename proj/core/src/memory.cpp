#include "genwar/memory.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace genwar {

const char* memory_kind_name(MemoryKind kind) {
  switch (kind) {
    case MemoryKind::observation: return "observation";
    case MemoryKind::reflection: return "reflection";
    case MemoryKind::plan: return "plan";
  }
  return "observation";
}

MemoryKind memory_kind_from_name(const std::string& name) {
  if (name == "observation") return MemoryKind::observation;
  if (name == "reflection") return MemoryKind::reflection;
  if (name == "plan") return MemoryKind::plan;
  throw MemoryError("unknown memory kind: " + name);
}

double score_recency(double decay, int now, int last_accessed) {
  return std::pow(decay, static_cast<double>(now - last_accessed));
}

std::vector<double> normalize_component(const std::vector<double>& values) {
  std::vector<double> out(values.size(), 0.5);
  if (values.empty()) return out;
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it, hi = *max_it;
  if (hi == lo) return out;  // no spread: every candidate sits at 0.5
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / (hi - lo);
  return out;
}

MemoryStream::MemoryStream(int owner, RetrievalWeights weights)
    : owner_(owner), weights_(weights) {}

int MemoryStream::record(MemoryKind kind, int tick, std::string description, int importance,
                         std::vector<int> sources) {
  MemoryObject m;
  m.id = next_id_++;
  m.owner = owner_;
  m.kind = kind;
  m.created_at = tick;
  m.last_accessed = tick;
  m.importance = std::clamp(importance, 1, 10);
  m.description = std::move(description);
  m.sources = std::move(sources);
  accumulated_ += m.importance;
  memories_.push_back(std::move(m));
  return memories_.back().id;
}

const MemoryObject& MemoryStream::memory(int id) const {
  for (const MemoryObject& m : memories_)
    if (m.id == id) return m;
  throw MemoryError("no memory with id " + std::to_string(id));
}

std::vector<ScoredMemory> MemoryStream::retrieve(const std::string& query, int now,
                                                 RelevanceScorer& scorer, bool update_access) {
  std::vector<ScoredMemory> scored(memories_.size());
  std::vector<double> recency(memories_.size());
  std::vector<double> importance(memories_.size());
  std::vector<double> relevance(memories_.size());
  for (std::size_t i = 0; i < memories_.size(); ++i) {
    const MemoryObject& m = memories_[i];
    recency[i] = score_recency(weights_.decay, now, m.last_accessed);
    importance[i] = static_cast<double>(m.importance);
    relevance[i] = static_cast<double>(scorer.relevance(query, m.description));
  }
  const std::vector<double> recency_n = normalize_component(recency);
  const std::vector<double> importance_n = normalize_component(importance);
  const std::vector<double> relevance_n = normalize_component(relevance);
  for (std::size_t i = 0; i < memories_.size(); ++i) {
    ScoredMemory& s = scored[i];
    s.id = memories_[i].id;
    s.recency_raw = recency[i];
    s.importance_raw = importance[i];
    s.relevance_raw = relevance[i];
    s.recency = recency_n[i];
    s.importance = importance_n[i];
    s.relevance = relevance_n[i];
    s.final_score = weights_.alpha_recency * s.recency +
                    weights_.alpha_importance * s.importance +
                    weights_.alpha_relevance * s.relevance;
  }

  // Highest score first; equal scores prefer the newer memory, then the
  // smaller id so the order is total.
  std::vector<std::size_t> order(scored.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].final_score != scored[b].final_score)
      return scored[a].final_score > scored[b].final_score;
    if (memories_[a].created_at != memories_[b].created_at)
      return memories_[a].created_at > memories_[b].created_at;
    return memories_[a].id < memories_[b].id;
  });

  const std::size_t take = std::min<std::size_t>(order.size(),
                                                 weights_.k < 0 ? 0 : weights_.k);
  std::vector<ScoredMemory> top;
  top.reserve(take);
  for (std::size_t i = 0; i < take; ++i) top.push_back(scored[order[i]]);

  if (update_access)
    for (const ScoredMemory& s : top)
      for (MemoryObject& m : memories_)
        if (m.id == s.id) m.last_accessed = now;
  return top;
}

void MemoryStream::touch(const std::vector<int>& ids, int now) {
  for (int id : ids)
    for (MemoryObject& m : memories_)
      if (m.id == id) m.last_accessed = now;
}

std::vector<const MemoryObject*> MemoryStream::recent(int n) const {
  std::vector<const MemoryObject*> out;
  if (n <= 0) return out;
  const std::size_t start = memories_.size() > static_cast<std::size_t>(n)
                                ? memories_.size() - static_cast<std::size_t>(n)
                                : 0;
  for (std::size_t i = start; i < memories_.size(); ++i) out.push_back(&memories_[i]);
  return out;
}

namespace {

std::string flatten(const std::string& text) {
  std::string out = text;
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

}  // namespace

void MemoryStream::write_log(std::ostream& out) const {
  out << "id\towner\tkind\tcreated_at\tlast_accessed\timportance\tdescription\n";
  for (const MemoryObject& m : memories_)
    out << m.id << '\t' << m.owner << '\t' << memory_kind_name(m.kind) << '\t' << m.created_at
        << '\t' << m.last_accessed << '\t' << m.importance << '\t' << flatten(m.description)
        << '\n';
}

std::string MemoryStream::log_text() const {
  std::ostringstream out;
  write_log(out);
  return out.str();
}

}  // namespace genwar
