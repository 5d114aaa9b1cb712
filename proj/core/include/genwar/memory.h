#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace genwar {

enum class MemoryKind { observation, reflection, plan };

const char* memory_kind_name(MemoryKind kind);
MemoryKind memory_kind_from_name(const std::string& name);

struct MemoryObject {
  int id = 0;           // unique within one stream, assigned in record order
  int owner = 0;        // unit id the stream belongs to
  MemoryKind kind = MemoryKind::observation;
  int created_at = 0;   // tick the memory was recorded
  int last_accessed = 0;
  int importance = 1;   // 1..10
  std::string description;
  std::vector<int> sources;  // cited memory ids (reflections only)
};

struct RetrievalWeights {
  double alpha_recency = 1.0;
  double alpha_importance = 1.0;
  double alpha_relevance = 1.0;
  double decay = 0.995;  // per-tick recency decay
  int k = 8;             // memories returned per query
};

// One candidate after scoring: the raw component values, their min-max
// normalized forms over the candidate set, and the weighted total.
struct ScoredMemory {
  int id = 0;
  double recency_raw = 0.0;
  double importance_raw = 0.0;
  double relevance_raw = 0.0;
  double recency = 0.0;
  double importance = 0.0;
  double relevance = 0.0;
  double final_score = 0.0;
};

// Judges how relevant a stored description is to a query, on a 1..10 scale.
class RelevanceScorer {
 public:
  virtual ~RelevanceScorer() = default;
  virtual int relevance(const std::string& query, const std::string& description) = 0;
};

// Judges how important a single event is, on a 1..10 scale.
class ImportanceScorer {
 public:
  virtual ~ImportanceScorer() = default;
  virtual int importance(const std::string& description) = 0;
};

struct MemoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// recency of a memory at time `now`: decay^(now - last_accessed).
double score_recency(double decay, int now, int last_accessed);

// Min-max normalization of one component over the candidate set. All-equal
// inputs have no spread to express, so every value maps to 0.5.
std::vector<double> normalize_component(const std::vector<double>& values);

// Append-only record of everything one agent has experienced, with scored
// retrieval over the whole stream.
class MemoryStream {
 public:
  explicit MemoryStream(int owner, RetrievalWeights weights = {});

  // Stores a memory and grows the reflection accumulator by its importance.
  // Returns the assigned id.
  int record(MemoryKind kind, int tick, std::string description, int importance,
             std::vector<int> sources = {});

  const std::vector<MemoryObject>& memories() const { return memories_; }
  const MemoryObject& memory(int id) const;  // throws MemoryError if absent
  bool empty() const { return memories_.empty(); }
  std::size_t size() const { return memories_.size(); }
  int owner() const { return owner_; }
  const RetrievalWeights& weights() const { return weights_; }
  void set_weights(RetrievalWeights weights) { weights_ = weights; }

  // Scores every memory against the query and returns the top weights().k by
  // final score (ties: newer created_at first, then lower id). The scorer is
  // consulted once per memory, in ascending id order. When update_access is
  // set, each returned memory's last_accessed moves to `now` after scoring.
  std::vector<ScoredMemory> retrieve(const std::string& query, int now,
                                     RelevanceScorer& scorer, bool update_access = true);

  // Importance accumulated by record() since the last reset; drives the
  // reflection trigger.
  double accumulated_importance() const { return accumulated_; }
  void reset_accumulator() { accumulated_ = 0.0; }

  // Marks the given memories as accessed at `now`.
  void touch(const std::vector<int>& ids, int now);

  // The n most recently recorded memories, oldest of them first.
  std::vector<const MemoryObject*> recent(int n) const;

  // Tab-separated dump, one header line then one line per memory:
  // id, owner, kind, created_at, last_accessed, importance, description.
  void write_log(std::ostream& out) const;
  std::string log_text() const;

 private:
  int owner_;
  RetrievalWeights weights_;
  std::vector<MemoryObject> memories_;
  int next_id_ = 1;
  double accumulated_ = 0.0;
};

}  // namespace genwar
