#include <gtest/gtest.h>

#include <random>

#include "netbound/instances.hpp"
#include "netbound/network.hpp"
#include "test_support.hpp"

namespace netbound {
namespace {

using testing::nodes_of;
using testing::read_data;

Network triangle() { return parse_network("edge a b\nedge b c\nedge a c\n"); }
Network path3() { return parse_network("edge a b\nedge b c\n"); }

TEST(ParseNetwork, SmallestValidInstance) {
  Network net = parse_network("node a\nnode b\nedge a b\npair a b");
  EXPECT_EQ(net.num_nodes(), 2);
  EXPECT_EQ(net.num_edges(), 1);
  EXPECT_EQ(net.num_demands(), 1);
  EXPECT_EQ(net.demand(0).source, net.node("a"));
  EXPECT_EQ(net.demand(0).sink, net.node("b"));
}

TEST(ParseNetwork, HuInstanceFile) {
  Network net = parse_network(read_data("hu.net"));
  EXPECT_EQ(net.num_nodes(), 6);
  EXPECT_EQ(net.num_edges(), 8);
  EXPECT_EQ(net.num_demands(), 3);
}

TEST(ParseNetwork, CommentsBlankLinesAndImplicitNodes) {
  Network net = parse_network("# header\n\nedge x y   # trailing\npair y z\n");
  EXPECT_EQ(net.num_nodes(), 3);
  EXPECT_TRUE(net.find_node("z").has_value());
}

TEST(ParseNetwork, OrderOfEdgeAndPairLinesDoesNotMatter) {
  Network a = parse_network("edge a b\npair a c\nedge b c\npair b a\n");
  Network b = parse_network("pair a c\nedge b c\npair b a\nedge a b\n");
  EXPECT_EQ(a, b);
}

TEST(ParseNetwork, Errors) {
  auto line_of = [](const char* text) {
    try {
      parse_network(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("edge a a"), 1);                   // self-loop
  EXPECT_EQ(line_of("edge a b\nedge b a"), 2);         // duplicate edge
  EXPECT_EQ(line_of("node a\n\npair a a"), 3);         // source == sink
  EXPECT_EQ(line_of("edge a"), 1);                     // arity
  EXPECT_EQ(line_of("edge a b\nlink a b"), 2);         // unknown keyword
  EXPECT_EQ(line_of("node a b"), 1);
  EXPECT_THROW(parse_network("edge a a"), ParseError);
}

TEST(Neighbors, Examples) {
  Network tri = triangle();
  EXPECT_EQ(neighbors(tri, "a"), nodes_of(tri, {"b", "c"}));
  Network path = path3();
  EXPECT_EQ(neighbors(path, "a"), nodes_of(path, {"b"}));
  EXPECT_THROW(neighbors(path, "zz"), ValidationError);
  EXPECT_THROW(neighbors(path, 7), ValidationError);
}

TEST(Neighbors, CompleteBipartiteThreeSideSeesTwoSide) {
  auto inst = gen_complete_npartite({3, 2});
  for (NodeId u : inst.partition.sets[0]) EXPECT_EQ(neighbors(inst.network, u), inst.partition.sets[1]);
  for (NodeId u : inst.partition.sets[1]) EXPECT_EQ(neighbors(inst.network, u), inst.partition.sets[0]);
}

TEST(DemandIndices, Examples) {
  Network hu = gen_hu();
  EXPECT_EQ(demand_indices(hu, hu.all_nodes(), hu.all_nodes()), hu.all_demands());
  NodeSet sinks_only = nodes_of(hu, {"t1", "t2", "t3"});
  EXPECT_TRUE(demand_indices(hu, sinks_only, hu.all_nodes()).empty());

  Partition fig2 = parse_partition(hu, read_data("hu_tripartition.txt"));
  int total = 0;
  for (NodeSet s : fig2.sets) total += demand_indices(hu, s, s).size();
  EXPECT_EQ(total, 3);
}

TEST(CutEdges, Examples) {
  Network path = path3();
  EXPECT_TRUE(cut_edges(path, NodeSet{}).empty());
  EXPECT_TRUE(cut_edges(path, path.all_nodes()).empty());
  EXPECT_EQ(cut_edges(path, nodes_of(path, {"b"})).size(), 2U);

  Network hu = gen_hu();
  NodeSet sources = nodes_of(hu, {"s1", "s2", "s3"});
  EXPECT_EQ(cut_edges(hu, sources).size(), 4U);
  EXPECT_EQ(separated_demands(hu, sources).size(), 3);
}

TEST(IndependentSets, Examples) {
  Network tri = triangle();
  EXPECT_TRUE(is_independent_set(tri, NodeSet{0}));
  for (const Edge& e : tri.edges()) EXPECT_FALSE(is_independent_set(tri, NodeSet{e.u, e.v}));
  auto k32 = gen_complete_npartite({3, 2});
  for (NodeSet side : k32.partition.sets) EXPECT_TRUE(is_independent_set(k32.network, side));
}

TEST(ValidPartition, Examples) {
  Network hu = gen_hu();
  EXPECT_TRUE(is_valid_partition(hu, Partition::singletons(hu.num_nodes())));
  EXPECT_FALSE(is_valid_partition(hu, Partition{{hu.all_nodes()}}));
  EXPECT_TRUE(is_valid_partition(hu, parse_partition(hu, read_data("hu_tripartition.txt"))));
  EXPECT_TRUE(is_valid_partition(hu, parse_partition(hu, read_data("hu_bipartition.txt"))));
  // Not covering, overlapping, empty set.
  EXPECT_FALSE(is_valid_partition(hu, Partition{{nodes_of(hu, {"s1", "t1"})}}));
  Partition overlap = Partition::singletons(hu.num_nodes());
  overlap.sets.push_back(NodeSet{0});
  EXPECT_FALSE(is_valid_partition(hu, overlap));
  Partition with_empty = Partition::singletons(hu.num_nodes());
  with_empty.sets.push_back(NodeSet{});
  EXPECT_FALSE(is_valid_partition(hu, with_empty));
}

TEST(PartitionFile, UnknownLabelIsAnError) {
  Network hu = gen_hu();
  EXPECT_THROW(parse_partition(hu, "s1 t1\nq9\n"), ParseError);
}

TEST(RenderNetwork, CanonicalOrder) {
  Network net = parse_network("edge c a\nedge b a\npair c b\npair a c\n");
  EXPECT_EQ(render_network(net),
            "node a\nnode b\nnode c\nedge a b\nedge a c\npair c b\npair a c\n");
}

// Property suite over seeded random instances.
class RandomNetworks : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomNetworks, Invariants) {
  std::mt19937_64 rng(GetParam());
  Network net = gen_random(2 + static_cast<int>(GetParam() % 9), 0.4, static_cast<int>(GetParam() % 6), GetParam());

  EXPECT_EQ(parse_network(render_network(net)), net);
  EXPECT_EQ(render_network(parse_network(render_network(net))), render_network(net));

  for (NodeId u = 0; u < net.num_nodes(); ++u)
    for (NodeId v : neighbors(net, u)) EXPECT_TRUE(neighbors(net, v).contains(u));

  EXPECT_TRUE(is_valid_partition(net, Partition::singletons(net.num_nodes())));

  const std::uint64_t full = net.all_nodes().mask();
  for (int trial = 0; trial < 20; ++trial) {
    NodeSet s = NodeSet::from_mask(rng() & full);
    NodeSet a = NodeSet::from_mask(rng() & full), a2 = NodeSet::from_mask(rng() & full);
    EXPECT_EQ(cut_edges(net, s).size(), cut_edges(net, net.all_nodes() - s).size());
    EXPECT_EQ(static_cast<int>(cut_edges(net, s).size()), cut_size(net, s));
    EXPECT_EQ(demand_indices(net, a, s) & demand_indices(net, a2, s), demand_indices(net, a & a2, s));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomNetworks, ::testing::Range<std::uint64_t>(1, 41));

}  // namespace
}  // namespace netbound
