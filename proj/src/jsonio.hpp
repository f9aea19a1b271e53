// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON wire formats. Parsers raise Parse errors naming the offending source
// and field; serialisers use ordered_json so identical inputs produce
// byte-identical output.
#ifndef RELWB_JSONIO_HPP
#define RELWB_JSONIO_HPP

#include <map>
#include <memory>
#include <string>

#include "json.hpp"
#include "kernels.hpp"
#include "pgroup.hpp"
#include "structure.hpp"

namespace relwb {

using ordered_json = nlohmann::ordered_json;

// Parses a JSON document; `where` names the source (file path or "input").
ordered_json parse_json_text(const std::string& text, const std::string& where);

Relation relation_from_json(const ordered_json& j, const std::string& where);
ordered_json relation_to_json(const Relation& r);

std::map<std::string, Relation> env_from_json(const ordered_json& j, const std::string& where);

std::shared_ptr<FiniteStructure> structure_from_json(const ordered_json& j,
                                                     const std::string& where);
// Emits carrier, signature, and every materialised table (fallback-backed
// symbols are left out; constructed structures that are meant to round-trip
// carry dense tables for their whole signature).
ordered_json structure_to_json(const FiniteStructure& s);

RepresentationCandidate representation_from_json(const ordered_json& j,
                                                 std::shared_ptr<const FiniteStructure> s,
                                                 const std::string& where);
ordered_json representation_to_json(const RepresentationCandidate& c);

SquarePartialGroup pgroup_from_json(const ordered_json& j, const std::string& where);
Group group_from_json(const ordered_json& j, const std::string& where);
ordered_json group_to_json(const Group& g);

Graph graph_from_json(const ordered_json& j, const std::string& where);

}  // namespace relwb

#endif  // RELWB_JSONIO_HPP
