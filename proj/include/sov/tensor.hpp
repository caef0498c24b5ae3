#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "sov/exactnum.hpp"
#include "sov/linalg.hpp"

namespace sov {

struct TensorError : std::logic_error {
    using std::logic_error::logic_error;
};
struct ShapeMismatch : TensorError {
    using TensorError::TensorError;
};
struct EvaluationPointMismatch : TensorError {
    using TensorError::TensorError;
};
struct DuplicateSpace : TensorError {
    using TensorError::TensorError;
};

enum class SpaceKind { Quantum, Vector, Fused };

// The name is the identity; two slots with the same name must agree on
// everything else, including the evaluation point.
struct Space {
    std::string name;
    SpaceKind kind = SpaceKind::Quantum;
    size_t dim = 1;
    Scalar point = 0;
    int level = 0;  // k for fused slots, M for vector slots

    static Space quantum(const std::string& name, size_t dim);
    static Space vector(const std::string& name, size_t dim, const Scalar& x);
};

bool same_space(const Space& a, const Space& b);
void check_compatible(const Space& a, const Space& b);

enum class Var { Out, In };

struct Slot {
    Space space;
    Var var;
};

class OpTensor {
public:
    OpTensor() = default;
    explicit OpTensor(std::vector<Slot> slots);

    // rows indexed by outs (row-major), columns by ins
    static OpTensor from_matrix(const std::vector<Space>& outs, const std::vector<Space>& ins, const Mat& m);
    static OpTensor identity(const std::vector<Space>& spaces);
    static OpTensor scalar(const Scalar& c);

    const std::vector<Slot>& slots() const { return slots_; }
    const std::vector<Scalar>& data() const { return data_; }
    std::vector<Scalar>& data() { return data_; }
    size_t size() const { return data_.size(); }

    int find(const std::string& name, Var v) const;
    bool has(const std::string& name, Var v) const { return find(name, v) >= 0; }
    std::vector<Space> spaces(Var v) const;

    OpTensor permuted(const std::vector<size_t>& order) const;
    OpTensor aligned_to(const std::vector<Slot>& order) const;
    Mat to_matrix(const std::vector<std::string>& outs, const std::vector<std::string>& ins) const;
    // general matrix view: rows and columns are arbitrary slot lists covering all slots
    Mat to_matrix_slots(const std::vector<std::pair<std::string, Var>>& rows,
                        const std::vector<std::pair<std::string, Var>>& cols) const;
    OpTensor relabeled(const std::string& name, Var v, const Space& to) const;

    bool is_zero() const;
    Scalar max_abs() const;

    OpTensor& operator*=(const Scalar& c);
    friend OpTensor operator*(const Scalar& c, OpTensor t) { return t *= c; }
    friend OpTensor operator+(const OpTensor& a, const OpTensor& b);
    friend OpTensor operator-(const OpTensor& a, const OpTensor& b);
    friend bool operator==(const OpTensor& a, const OpTensor& b);

private:
    std::vector<Slot> slots_;
    std::vector<Scalar> data_;
};

// A∘B: contracts every space where A has an input and B an output; spaces
// present in only one factor pass through (identity on the other).
OpTensor compose(const OpTensor& A, const OpTensor& B);
inline OpTensor operator*(const OpTensor& A, const OpTensor& B) { return compose(A, B); }
OpTensor tensor_product(const OpTensor& A, const OpTensor& B);
// covector xi (input slot only) applied to A from the left, row-vector convention
OpTensor contract_covector(const OpTensor& xi, const OpTensor& A);

nlohmann::json to_json(const OpTensor& t);

}  // namespace sov
