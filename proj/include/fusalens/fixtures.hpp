#pragma once

#include <string>
#include <vector>

#include "fusalens/graph.hpp"

namespace fusalens {

/// A demo project as shipped under data/fixtures/<id>/.
struct FixtureProject {
  ProjectMeta meta;
  std::string nodes_csv;
  std::string links_csv;
};

/// F1 (Project-A), F2 (Project-C) and F3 (Project-B), embedded at build
/// time from data/fixtures.
const std::vector<FixtureProject>& demo_fixtures();

const FixtureProject& demo_fixture(const std::string& project_id);

/// Parses a fixture into a snapshot with revision 0.
GraphSnapshot load_fixture(const FixtureProject& fixture);

}  // namespace fusalens
