#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "socinf/graph.hpp"

namespace socinf {

using Timestamp = std::int64_t;

struct ActionRecord {
    SubjectId subject;
    ActionId action;
    std::optional<Timestamp> timestamp;

    friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

enum class TimestampMode { Timed, Untimed, Mixed };

// Who performed what (and when). Activation is one-shot: at most one record
// per (subject, action); duplicates passed to the constructor keep the
// earliest timestamp.
class ActionLog {
public:
    ActionLog() = default;
    ActionLog(IdMap actions, std::size_t n_subjects, std::vector<ActionRecord> records);

    std::size_t n_subjects() const { return by_subject_.size(); }
    std::size_t n_actions() const { return actions_.size(); }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    const IdMap& actions() const { return actions_; }
    // Sorted by (action, timestamp, subject); untimed records sort first.
    std::span<const ActionRecord> records() const { return records_; }

    // Records of one action in activation order.
    std::span<const ActionRecord> episode(ActionId a) const;
    // Actions performed by `s`, ascending (the set A_s).
    std::span<const ActionId> actions_of(SubjectId s) const { return by_subject_[s]; }
    std::size_t count_of(SubjectId s) const { return by_subject_[s].size(); }

    // The subject's record for `a`, if it performed it.
    const ActionRecord* find(SubjectId s, ActionId a) const;
    bool performed(SubjectId s, ActionId a) const { return find(s, a) != nullptr; }

    TimestampMode timestamp_mode() const { return mode_; }

private:
    IdMap actions_;
    std::vector<ActionRecord> records_;
    std::vector<std::size_t> action_offsets_;
    std::vector<std::vector<ActionId>> by_subject_;
    std::vector<std::vector<std::uint32_t>> record_of_;  // parallel to by_subject_
    TimestampMode mode_ = TimestampMode::Untimed;
};

}  // namespace socinf
