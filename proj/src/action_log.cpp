#include "socinf/action_log.hpp"

#include <algorithm>
#include <tuple>

#include "socinf/error.hpp"

namespace socinf {

namespace {

// nullopt sorts before any timestamp.
auto record_key(const ActionRecord& r) {
    return std::make_tuple(r.action, r.timestamp.has_value(), r.timestamp.value_or(0), r.subject);
}

}  // namespace

ActionLog::ActionLog(IdMap actions, std::size_t n_subjects, std::vector<ActionRecord> records)
    : actions_(std::move(actions)), records_(std::move(records)) {
    for (const auto& r : records_) {
        if (r.subject >= n_subjects || r.action >= actions_.size()) {
            throw ContractError("action record references an unknown subject or action");
        }
    }
    // Keep the earliest record per (subject, action); a present timestamp
    // beats a missing one.
    std::sort(records_.begin(), records_.end(), [](const ActionRecord& a, const ActionRecord& b) {
        return std::make_tuple(a.action, a.subject, !a.timestamp.has_value(), a.timestamp.value_or(0)) <
               std::make_tuple(b.action, b.subject, !b.timestamp.has_value(), b.timestamp.value_or(0));
    });
    records_.erase(std::unique(records_.begin(), records_.end(),
                               [](const ActionRecord& a, const ActionRecord& b) {
                                   return a.action == b.action && a.subject == b.subject;
                               }),
                   records_.end());
    std::sort(records_.begin(), records_.end(),
              [](const ActionRecord& a, const ActionRecord& b) { return record_key(a) < record_key(b); });

    action_offsets_.assign(actions_.size() + 1, 0);
    by_subject_.assign(n_subjects, {});
    record_of_.assign(n_subjects, {});
    std::size_t timed = 0;
    for (std::uint32_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        ++action_offsets_[r.action + 1];
        by_subject_[r.subject].push_back(r.action);
        record_of_[r.subject].push_back(i);
        timed += r.timestamp.has_value() ? 1 : 0;
    }
    for (std::size_t a = 0; a < actions_.size(); ++a) {
        action_offsets_[a + 1] += action_offsets_[a];
    }
    // Records are action-major, so by_subject_ lists are already ascending.
    if (records_.empty() || timed == 0) {
        mode_ = TimestampMode::Untimed;
    } else if (timed == records_.size()) {
        mode_ = TimestampMode::Timed;
    } else {
        mode_ = TimestampMode::Mixed;
    }
}

std::span<const ActionRecord> ActionLog::episode(ActionId a) const {
    return std::span<const ActionRecord>(records_).subspan(action_offsets_[a],
                                                           action_offsets_[a + 1] - action_offsets_[a]);
}

const ActionRecord* ActionLog::find(SubjectId s, ActionId a) const {
    const auto& acts = by_subject_[s];
    auto it = std::lower_bound(acts.begin(), acts.end(), a);
    if (it == acts.end() || *it != a) {
        return nullptr;
    }
    return &records_[record_of_[s][static_cast<std::size_t>(it - acts.begin())]];
}

}  // namespace socinf
