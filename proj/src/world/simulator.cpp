/*
 * Copyright 2026 The CodePlan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "codeplan/world/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace codeplan::world {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string not_relation(std::string_view relation, const std::string& obj, std::string_view action) {
    return "not " + std::string(relation) + " to <" + obj + "> when [" + upper(action) + "]";
}

std::string not_found(const std::string& obj, const std::string& room) {
    return "<" + obj + "> not found in <" + room + ">";
}

void refresh_visible(WorldState& s) {
    s.visible.clear();
    for (const auto& o : s.objects_in(s.agent_room)) s.visible.insert(o);
    s.visible.insert(s.held.begin(), s.held.end());
}

void drop_from_hand(WorldState& s, const std::string& obj) {
    s.held.erase(std::remove(s.held.begin(), s.held.end(), obj), s.held.end());
    s.object_states[obj].erase(Flag::Grabbed);
}

}  // namespace

bool is_world_action(std::string_view name) {
    return std::find(kActionNames.begin(), kActionNames.end(), name) != kActionNames.end();
}

std::vector<std::string> observe(const WorldState& s, const std::string& obj) {
    std::vector<std::string> out;
    if (s.is_room(obj)) {
        out.push_back("agent is in " + s.agent_room);
    } else if (s.is_held(obj)) {
        out.push_back(obj + " is in hand");
    } else if (s.has_flag(obj, Flag::Eaten)) {
        out.push_back(obj + " is eaten");
    } else if (s.proximity.count(obj)) {
        out.push_back(obj + " is near");
    } else if (s.visible.count(obj)) {
        out.push_back(obj + " is visible but not near");
    } else {
        out.push_back(obj + " is not visible");
    }
    if (s.held.empty()) {
        out.push_back("agent is holding nothing");
    } else {
        for (const auto& h : s.held) out.push_back("agent is holding " + h);
    }
    return out;
}

std::pair<WorldState, ActionOutcome> apply_action(const WorldState& state, const GroundAction& action) {
    if (!is_world_action(action.name)) throw SimError("unsupported action: " + action.name);
    if (action.args.size() != 1) {
        throw SimError(action.name + " takes 1 argument, got " + std::to_string(action.args.size()));
    }
    const std::string& x = action.args.front();
    if (!state.exists(x)) throw UnknownObject(x);

    auto fail = [&](std::string message) {
        ActionOutcome out{false, std::move(message), observe(state, x)};
        return std::make_pair(state, std::move(out));
    };

    WorldState next = state;
    const std::string& verb = action.name;
    const bool located_here = [&] {
        auto it = state.object_locations.find(x);
        return it != state.object_locations.end() && it->second == state.agent_room;
    }();

    if (verb == "walk") {
        if (state.is_room(x)) {
            next.agent_room = x;
            next.proximity.clear();
            next.visible = std::set<std::string>(next.held.begin(), next.held.end());
        } else {
            auto loc = state.object_locations.find(x);
            if (loc == state.object_locations.end()) return fail(not_found(x, state.agent_room));
            next.agent_room = loc->second;
            refresh_visible(next);
            next.proximity = {x};
        }
    } else if (verb == "find") {
        if (!located_here) return fail(not_found(x, state.agent_room));
        refresh_visible(next);
        next.proximity = {x};
    } else if (verb == "grab") {
        if (!state.proximity.count(x)) return fail(not_relation("close", x, verb));
        if (!state.visible.count(x)) return fail(not_relation("visible", x, verb));
        if (state.held.size() >= kHandCapacity) return fail("hands full when [GRAB]");
        next.held.push_back(x);
        next.object_states[x].insert(Flag::Grabbed);
        next.object_locations.erase(x);
        next.proximity.erase(x);
    } else if (verb == "sit") {
        if (!state.proximity.count(x)) return fail(not_relation("close", x, verb));
        if (!state.has_property(x, Property::Sittable)) return fail(not_relation("sittable", x, verb));
        next.object_states[x].insert(Flag::SatOn);
    } else if (verb == "eat") {
        if (!state.is_held(x)) return fail(not_relation("holding", x, verb));
        if (!state.has_property(x, Property::Edible)) return fail(not_relation("edible", x, verb));
        drop_from_hand(next, x);
        next.object_states[x].insert(Flag::Eaten);
        next.visible.erase(x);
        next.proximity.erase(x);
    } else if (verb == "open" || verb == "close_obj") {
        if (!state.proximity.count(x)) return fail(not_relation("close", x, verb));
        if (!state.has_property(x, Property::Container)) return fail(not_relation("openable", x, verb));
        if (verb == "open") next.object_states[x].insert(Flag::Open);
        else next.object_states[x].erase(Flag::Open);
    } else if (verb == "switch_on") {
        if (!state.proximity.count(x)) return fail(not_relation("close", x, verb));
        next.object_states[x].insert(Flag::On);
    } else {  // put_back
        if (!state.is_held(x)) return fail(not_relation("holding", x, verb));
        drop_from_hand(next, x);
        next.object_locations[x] = next.agent_room;
        next.visible.insert(x);
    }

    // Keep the flag map free of empty entries so equal worlds compare equal.
    for (auto it = next.object_states.begin(); it != next.object_states.end();) {
        it = it->second.empty() ? next.object_states.erase(it) : std::next(it);
    }
    ActionOutcome ok{true, "", observe(next, x)};
    return {std::move(next), std::move(ok)};
}

bool eval_predicate(const WorldState& s, const dsl::Predicate& pred) {
    if (pred.relation == dsl::Relation::Contains) {
        throw std::invalid_argument("'contains' is not a world predicate");
    }
    if (!s.exists(pred.subject)) throw UnknownObject(pred.subject);
    const std::string& x = pred.subject;
    bool value = false;
    switch (pred.relation) {
        case dsl::Relation::Close: value = s.proximity.count(x) != 0; break;
        case dsl::Relation::Visible: value = s.visible.count(x) != 0; break;
        case dsl::Relation::Holding: value = s.is_held(x); break;
        case dsl::Relation::Eaten: value = s.has_flag(x, Flag::Eaten); break;
        case dsl::Relation::SatOn: value = s.has_flag(x, Flag::SatOn); break;
        case dsl::Relation::Grabbed: value = s.has_flag(x, Flag::Grabbed); break;
        case dsl::Relation::Open: value = s.has_flag(x, Flag::Open); break;
        case dsl::Relation::On: value = s.has_flag(x, Flag::On); break;
        case dsl::Relation::Contains: break;
    }
    return pred.negated ? !value : value;
}

void check_goals(const WorldState& world, const GoalSpec& goals) {
    if (goals.predicates.empty()) throw std::invalid_argument("goal spec is empty");
    for (const auto& p : goals.predicates) {
        if (p.relation == dsl::Relation::Contains) throw std::invalid_argument("'contains' goal");
        if (!world.exists(p.subject)) throw UnknownObject(p.subject);
    }
}

GoalScore score_goals(const WorldState& final_state, bool trace_ok, const GoalSpec& goals) {
    GoalScore score;
    score.total = goals.predicates.size();
    for (const auto& p : goals.predicates) score.satisfied += eval_predicate(final_state, p);
    score.psr = score.total ? static_cast<double>(score.satisfied) / static_cast<double>(score.total) : 0.0;
    score.sr = (score.total && score.satisfied == score.total && trace_ok) ? 1 : 0;
    return score;
}

bool matches_feedback_template(std::string_view message) {
    static const std::regex kTemplates(
        R"(^(not [a-z_]+ to <[A-Za-z0-9_]+> when \[[A-Z_]+\]|<[A-Za-z0-9_]+> not found in <[A-Za-z0-9_]+>|hands full when \[GRAB\])$)");
    return std::regex_match(message.begin(), message.end(), kTemplates);
}

}  // namespace codeplan::world
