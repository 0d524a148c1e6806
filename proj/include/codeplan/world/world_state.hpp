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

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codeplan::world {

enum class Flag { Grabbed, Eaten, SatOn, Open, On };
enum class Property { Sittable, Edible, Container };

std::string_view to_string(Flag f);
std::string_view to_string(Property p);

inline constexpr std::size_t kHandCapacity = 2;

class UnknownObject : public std::runtime_error {
public:
    explicit UnknownObject(std::string name)
        : std::runtime_error("unknown object: " + name), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Snapshot of the household world. A plain value: copy it to branch.
struct WorldState {
    std::set<std::string> rooms;
    std::map<std::string, std::set<Property>> objects;  // catalog of non-room objects
    std::map<std::string, std::string> object_locations;
    std::map<std::string, std::set<Flag>> object_states;
    std::string agent_room;
    std::set<std::string> proximity;
    std::set<std::string> visible;
    std::vector<std::string> held;

    bool operator==(const WorldState&) const = default;

    bool is_room(std::string_view id) const { return rooms.count(std::string(id)) != 0; }
    bool is_object(std::string_view id) const { return objects.count(std::string(id)) != 0; }
    bool exists(std::string_view id) const { return is_room(id) || is_object(id); }
    bool has_flag(const std::string& obj, Flag f) const;
    bool has_property(const std::string& obj, Property p) const;
    bool is_held(const std::string& obj) const;
    std::vector<std::string> objects_in(const std::string& room) const;

    // Objects in declaration-independent (sorted) order followed by rooms.
    std::vector<std::string> all_ids() const;
};

// Returns one message per violated state invariant; empty when consistent.
std::vector<std::string> check_invariants(const WorldState& s);

}  // namespace codeplan::world
