#pragma once

#include <string>

#include "salbp3pm/encoder.hpp"

namespace salbp3pm::detail {

// Attributes clauses appended between construction and close() to one family.
class FamilyScope {
 public:
  FamilyScope(Encoding& enc, std::string family)
      : enc_(enc), family_(std::move(family)), before_(enc.formula.clause_count()) {}
  ~FamilyScope() { close(); }
  FamilyScope(const FamilyScope&) = delete;
  FamilyScope& operator=(const FamilyScope&) = delete;

  void close() {
    if (closed_) return;
    closed_ = true;
    enc_.stats.families.push_back({family_, enc_.formula.clause_count() - before_});
  }

 private:
  Encoding& enc_;
  std::string family_;
  std::size_t before_;
  bool closed_ = false;
};

// Assignment of tasks to stations outside their windows, shared by both encoders.
void add_station_pruning(Encoding& enc, const Instance& inst, const PrecedenceClosure& closure);
void add_time_pruning(Encoding& enc, const Instance& inst, const PrecedenceClosure& closure);
void add_activity(Encoding& enc, const Instance& inst);
void add_non_overlap(Encoding& enc, const Instance& inst);

}  // namespace salbp3pm::detail
