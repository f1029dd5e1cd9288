#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "fusalens/error.hpp"
#include "fusalens/generate.hpp"
#include "fusalens/ingest.hpp"
#include "fusalens/serialize.hpp"
#include "fusalens/store.hpp"
#include "test_support.hpp"

using namespace fusalens;
using testing_support::TempDir;

namespace {

struct Records {
  ProjectMeta meta;
  std::vector<ElementRecord> nodes;
  std::vector<LinkRecord> links;
};

Records fixture_records(const std::string& id) {
  const auto& f = demo_fixture(id);
  return {f.meta, parse_nodes_csv(f.nodes_csv), parse_links_csv(f.links_csv)};
}

}  // namespace

TEST(Store, EmptyRepository) {
  TempDir dir;
  ProjectStore store(dir.path());
  EXPECT_TRUE(store.list_projects().empty());
  EXPECT_THROW(store.get_graph("F1"), NotFoundError);
}

TEST(Store, CommitAndGet) {
  TempDir dir;
  ProjectStore store(dir.path());
  auto r = fixture_records("F1");
  const auto result = store.commit_project(r.meta, r.nodes, r.links);
  EXPECT_EQ(result.project_id, "F1");
  EXPECT_EQ(result.revision, 1u);

  const auto g = store.get_graph("F1");
  EXPECT_EQ(g->node_count(), 8u);
  EXPECT_EQ(g->link_count(), 6u);
  const auto again = store.get_graph("F1");
  EXPECT_EQ(snapshot_to_json(*g), snapshot_to_json(*again));
  EXPECT_EQ(g->revision(), again->revision());
}

TEST(Store, RecommitReplacesAndBumpsRevision) {
  TempDir dir;
  ProjectStore store(dir.path());
  auto r = fixture_records("F1");
  store.commit_project(r.meta, r.nodes, r.links);
  const auto before = store.get_graph("F1");
  r.nodes.push_back({"n9", "Extra", "SG", Asil::B, {}});
  store.commit_project(r.meta, r.nodes, r.links);
  const auto after = store.get_graph("F1");
  EXPECT_GT(after->revision(), before->revision());
  EXPECT_EQ(after->node_count(), 9u);
  // The old snapshot stays intact for readers that still hold it.
  EXPECT_EQ(before->node_count(), 8u);
}

TEST(Store, RejectsInvalidProjects) {
  TempDir dir;
  ProjectStore store(dir.path());
  auto r = fixture_records("F1");
  auto dup = r.nodes;
  dup.push_back(r.nodes[0]);
  try {
    store.commit_project(r.meta, dup, r.links);
    FAIL();
  } catch (const ValidationFailed& e) {
    ASSERT_FALSE(e.report().errors.empty());
    EXPECT_EQ(e.report().errors[0].code, "DUPLICATE_NODE_ID");
  }
  EXPECT_FALSE(store.contains("F1"));

  auto bad_meta = r.meta;
  bad_meta.system.clear();
  EXPECT_THROW(store.commit_project(bad_meta, r.nodes, r.links),
               InvalidArgument);
  bad_meta = r.meta;
  bad_meta.project_id = "../escape";
  EXPECT_THROW(store.commit_project(bad_meta, r.nodes, r.links),
               InvalidArgument);
}

TEST(Store, WarningsDoNotBlockAndDuplicatesCollapse) {
  ProjectStore store;
  auto r = fixture_records("F1");
  r.links.push_back(r.links[1]);
  const auto result = store.commit_project(r.meta, r.nodes, r.links);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.warnings[0].code, "DUPLICATE_LINK");
  EXPECT_EQ(store.get_graph("F1")->link_count(), 6u);
}

TEST(Store, ListsProjectsSortedWithCounts) {
  TempDir dir;
  ProjectStore store(dir.path());
  for (auto id : {"F2", "F1"}) {
    auto r = fixture_records(id);
    store.commit_project(r.meta, r.nodes, r.links);
  }
  const auto list = store.list_projects();
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0].meta.project_id, "F1");
  EXPECT_EQ(list[0].node_count, 8u);
  EXPECT_EQ(list[0].link_count, 6u);
  EXPECT_EQ(list[1].meta.project_id, "F2");
  EXPECT_EQ(list[1].node_count, 11u);
  EXPECT_EQ(list[1].link_count, 10u);
  EXPECT_EQ(list[0].meta, demo_fixture("F1").meta);
  EXPECT_EQ(list[0].meta.in_charge, "Chris");
  EXPECT_EQ(list[0].meta.department, "Chassis Safety");
}

TEST(Store, ReloadsFromDisk) {
  TempDir dir;
  nlohmann::json before;
  {
    ProjectStore store(dir.path());
    auto r = fixture_records("F1");
    store.commit_project(r.meta, r.nodes, r.links);
    store.commit_project(r.meta, r.nodes, r.links);
    before = snapshot_to_json(*store.get_graph("F1"));
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "F1" / "meta.json"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "F1" / "graph.json"));
  ProjectStore reopened(dir.path());
  const auto g = reopened.get_graph("F1");
  EXPECT_EQ(g->revision(), 2u);
  EXPECT_EQ(snapshot_to_json(*g), before);
}

TEST(Store, RoundTripRandomProjects) {
  TempDir dir;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto p = random_project(seed, "R" + std::to_string(seed));
    {
      ProjectStore store(dir.path());
      store.commit_project(p.meta, p.nodes, p.links);
    }
    ProjectStore reopened(dir.path());
    const auto g = reopened.get_graph(p.meta.project_id);
    EXPECT_EQ(g->meta(), p.meta);
    ASSERT_EQ(std::vector<ElementRecord>(g->nodes().begin(), g->nodes().end()),
              p.nodes);
    ASSERT_EQ(std::vector<LinkRecord>(g->links().begin(), g->links().end()),
              p.links);
  }
}

TEST(Store, ConcurrentReadersNeverSeeMixedRevisions) {
  ProjectStore store;
  auto a = fixture_records("F1");
  auto b = a;
  for (int i = 0; i < 20; ++i)
    b.nodes.push_back({"extra" + std::to_string(i), "x", "SG", Asil::A, {}});
  store.commit_project(a.meta, a.nodes, a.links);

  std::atomic<bool> stop{false};
  std::atomic<int> mismatches{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t)
    readers.emplace_back([&] {
      while (!stop) {
        const auto g = store.get_graph("F1");
        const bool odd = g->revision() % 2 == 1;
        if (g->node_count() != (odd ? 8u : 28u)) ++mismatches;
      }
    });
  for (int i = 0; i < 200; ++i) {
    const auto& r = (i % 2 == 0) ? b : a;
    store.commit_project(r.meta, r.nodes, r.links);
  }
  stop = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(mismatches.load(), 0);
  EXPECT_EQ(store.get_graph("F1")->revision(), 201u);
}
