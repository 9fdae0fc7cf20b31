#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "onofri/parallel.hpp"

using namespace onofri;

TEST_SUITE("parallel") {
  TEST_CASE("every index visited once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, [](std::size_t) { FAIL("called for an empty range"); });
  }

  TEST_CASE("exceptions propagate after the join") {
    std::atomic<int> done{0};
    CHECK_THROWS_AS(parallel_for(50,
                                 [&](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                   done.fetch_add(1);
                                 }),
                    std::runtime_error);
  }

  TEST_CASE("thread cap from the environment") {
    ::setenv("ONOFRI_LAB_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    ::setenv("ONOFRI_LAB_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    ::unsetenv("ONOFRI_LAB_THREADS");
    CHECK(worker_count() >= 1);
  }
}
