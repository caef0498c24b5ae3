#include "doctest.h"
#include "sov/tensor.hpp"

#include <random>

using namespace sov;

namespace {

Mat random_mat(std::mt19937& rng, size_t r, size_t c) {
    std::uniform_int_distribution<int> d(-9, 9), e(1, 4);
    Mat m(r, c);
    for (auto& v : m.a) v = frac(d(rng), e(rng));
    return m;
}

const Space A = Space::quantum("a", 2), B = Space::quantum("b", 3);

}  // namespace

TEST_CASE("identity product") {
    OpTensor id = tensor_product(OpTensor::identity({A}), OpTensor::identity({B}));
    CHECK(id.to_matrix({"a", "b"}, {"a", "b"}) == Mat::identity(6));
    CHECK_THROWS_AS(tensor_product(OpTensor::identity({A}), OpTensor::identity({A})), DuplicateSpace);
}

TEST_CASE("composition matches kron and matrix products") {
    std::mt19937 rng(1);
    Mat a1 = random_mat(rng, 2, 2), a2 = random_mat(rng, 2, 2), b1 = random_mat(rng, 3, 3), b2 = random_mat(rng, 3, 3);
    OpTensor x = tensor_product(OpTensor::from_matrix({A}, {A}, a1), OpTensor::from_matrix({B}, {B}, b1));
    OpTensor y = tensor_product(OpTensor::from_matrix({A}, {A}, a2), OpTensor::from_matrix({B}, {B}, b2));
    CHECK((x * y).to_matrix({"a", "b"}, {"a", "b"}) == kron(a1 * a2, b1 * b2));
    // pass-through of a space present in one factor embeds as A (x) Id
    OpTensor only_a = OpTensor::from_matrix({A}, {A}, a1);
    OpTensor emb = only_a * OpTensor::identity({B});
    CHECK(emb.to_matrix({"a", "b"}, {"a", "b"}) == kron(a1, Mat::identity(3)));
}

TEST_CASE("compose with exact inverse") {
    std::mt19937 rng(2);
    Space c = Space::quantum("c", 3);
    Mat m = random_mat(rng, 3, 3);
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK((OpTensor::from_matrix({c}, {c}, m) * OpTensor::from_matrix({c}, {c}, *inv)) == OpTensor::identity({c}));
}

TEST_CASE("permute round trip and alignment") {
    std::mt19937 rng(3);
    OpTensor t = OpTensor::from_matrix({A, B}, {A, B}, random_mat(rng, 6, 6));
    OpTensor p = t.permuted({3, 1, 0, 2});
    CHECK(p.aligned_to(t.slots()) == t);
    CHECK(p == t);  // equality is up to slot order
}

TEST_CASE("covector contraction") {
    std::mt19937 rng(4);
    Mat xi = random_mat(rng, 1, 3);
    OpTensor cov = OpTensor::from_matrix({}, {B}, xi);
    CHECK(contract_covector(cov, OpTensor::identity({B})) == cov);
}

TEST_CASE("space identity") {
    Space v1 = Space::vector("v", 2, 3), v2 = Space::vector("v", 2, 5);
    OpTensor a = OpTensor::identity({v1}), b = OpTensor::identity({v2});
    CHECK_THROWS_AS(a * b, EvaluationPointMismatch);
    Space w = Space::vector("v", 3, 3);
    CHECK_THROWS(a * OpTensor::identity({w}));
}

TEST_CASE("clashes are rejected") {
    std::mt19937 rng(5);
    // both factors only have an input on b: a covector clash
    OpTensor cov = OpTensor::from_matrix({}, {B}, random_mat(rng, 1, 3));
    CHECK_THROWS_AS(cov * cov, TensorError);
    // A has an output-only b that B also carries
    OpTensor vec = OpTensor::from_matrix({B}, {}, random_mat(rng, 3, 1));
    CHECK_THROWS_AS(vec * OpTensor::identity({B}), TensorError);
}

TEST_CASE("json dump") {
    OpTensor t = OpTensor::identity({A});
    auto j = to_json(t);
    CHECK(j.contains("slots"));
    CHECK(j["entries"].size() == 4);
}
