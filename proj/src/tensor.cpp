#include "sov/tensor.hpp"

#include <map>


namespace sov {

Space Space::quantum(const std::string& name, size_t dim) {
    Space s;
    s.name = name;
    s.kind = SpaceKind::Quantum;
    s.dim = dim;
    return s;
}

Space Space::vector(const std::string& name, size_t dim, const Scalar& x) {
    Space s;
    s.name = name;
    s.kind = SpaceKind::Vector;
    s.dim = dim;
    s.point = x;
    s.level = static_cast<int>(dim);
    return s;
}

bool same_space(const Space& a, const Space& b) {
    return a.name == b.name && a.kind == b.kind && a.dim == b.dim && a.point == b.point && a.level == b.level;
}

void check_compatible(const Space& a, const Space& b) {
    if (a.name != b.name) return;
    if (a.dim != b.dim || a.kind != b.kind || a.level != b.level)
        throw ShapeMismatch("space '" + a.name + "' used with different shapes");
    if (a.point != b.point)
        throw EvaluationPointMismatch("space '" + a.name + "' at " + to_string(a.point) + " vs " +
                                      to_string(b.point));
}

namespace {

size_t volume(const std::vector<Slot>& s) {
    size_t v = 1;
    for (auto& x : s) v *= x.space.dim;
    return v;
}

}  // namespace

OpTensor::OpTensor(std::vector<Slot> slots) : slots_(std::move(slots)) {
    for (size_t i = 0; i < slots_.size(); ++i)
        for (size_t j = i + 1; j < slots_.size(); ++j) {
            check_compatible(slots_[i].space, slots_[j].space);
            if (slots_[i].space.name == slots_[j].space.name && slots_[i].var == slots_[j].var)
                throw DuplicateSpace("slot '" + slots_[i].space.name + "' listed twice");
        }
    data_.assign(volume(slots_), Scalar(0));
}

OpTensor OpTensor::from_matrix(const std::vector<Space>& outs, const std::vector<Space>& ins, const Mat& m) {
    std::vector<Slot> s;
    for (auto& o : outs) s.push_back({o, Var::Out});
    for (auto& i : ins) s.push_back({i, Var::In});
    OpTensor t(s);
    size_t r = 1, c = 1;
    for (auto& o : outs) r *= o.dim;
    for (auto& i : ins) c *= i.dim;
    if (m.rows != r || m.cols != c) throw ShapeMismatch("matrix does not match slot dimensions");
    t.data_ = m.a;
    return t;
}

OpTensor OpTensor::identity(const std::vector<Space>& spaces) {
    size_t n = 1;
    for (auto& s : spaces) n *= s.dim;
    // outs then ins in the same order: row-major identity
    return from_matrix(spaces, spaces, Mat::identity(n));
}

OpTensor OpTensor::scalar(const Scalar& c) {
    OpTensor t(std::vector<Slot>{});
    t.data_[0] = c;
    return t;
}

int OpTensor::find(const std::string& name, Var v) const {
    for (size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].space.name == name && slots_[i].var == v) return static_cast<int>(i);
    return -1;
}

std::vector<Space> OpTensor::spaces(Var v) const {
    std::vector<Space> r;
    for (auto& s : slots_)
        if (s.var == v) r.push_back(s.space);
    return r;
}

OpTensor OpTensor::permuted(const std::vector<size_t>& order) const {
    if (order.size() != slots_.size()) throw ShapeMismatch("permutation length");
    std::vector<Slot> ns;
    for (auto o : order) ns.push_back(slots_.at(o));
    OpTensor r(ns);
    size_t rank = slots_.size();
    std::vector<size_t> stride(rank, 1);
    for (size_t i = rank; i-- > 1;) stride[i - 1] = stride[i] * slots_[i].space.dim;
    std::vector<size_t> idx(rank, 0);
    size_t src = 0;
    for (size_t out = 0; out < r.data_.size(); ++out) {
        r.data_[out] = data_[src];
        for (size_t d = rank; d-- > 0;) {
            size_t od = order[d];
            if (++idx[d] < ns[d].space.dim) {
                src += stride[od];
                break;
            }
            src -= stride[od] * (idx[d] - 1);
            idx[d] = 0;
        }
    }
    return r;
}

OpTensor OpTensor::aligned_to(const std::vector<Slot>& order) const {
    if (order.size() != slots_.size()) throw ShapeMismatch("slot sets differ");
    std::vector<size_t> p;
    for (auto& s : order) {
        int i = find(s.space.name, s.var);
        if (i < 0) throw ShapeMismatch("slot '" + s.space.name + "' missing");
        check_compatible(slots_[i].space, s.space);
        p.push_back(static_cast<size_t>(i));
    }
    return permuted(p);
}

Mat OpTensor::to_matrix(const std::vector<std::string>& outs, const std::vector<std::string>& ins) const {
    std::vector<size_t> p;
    size_t r = 1, c = 1;
    for (auto& n : outs) {
        int i = find(n, Var::Out);
        if (i < 0) throw ShapeMismatch("no output slot '" + n + "'");
        p.push_back(i);
        r *= slots_[i].space.dim;
    }
    for (auto& n : ins) {
        int i = find(n, Var::In);
        if (i < 0) throw ShapeMismatch("no input slot '" + n + "'");
        p.push_back(i);
        c *= slots_[i].space.dim;
    }
    if (p.size() != slots_.size()) throw ShapeMismatch("to_matrix must list every slot");
    Mat m(r, c);
    m.a = permuted(p).data_;
    return m;
}

Mat OpTensor::to_matrix_slots(const std::vector<std::pair<std::string, Var>>& rows,
                              const std::vector<std::pair<std::string, Var>>& cols) const {
    std::vector<size_t> p;
    size_t r = 1, c = 1;
    for (auto& [n, v] : rows) {
        int i = find(n, v);
        if (i < 0) throw ShapeMismatch("no slot '" + n + "'");
        p.push_back(i);
        r *= slots_[i].space.dim;
    }
    for (auto& [n, v] : cols) {
        int i = find(n, v);
        if (i < 0) throw ShapeMismatch("no slot '" + n + "'");
        p.push_back(i);
        c *= slots_[i].space.dim;
    }
    if (p.size() != slots_.size()) throw ShapeMismatch("matrix view must list every slot");
    Mat m(r, c);
    m.a = permuted(p).data_;
    return m;
}

OpTensor OpTensor::relabeled(const std::string& name, Var v, const Space& to) const {
    int i = find(name, v);
    if (i < 0) throw ShapeMismatch("no slot '" + name + "' to relabel");
    if (slots_[i].space.dim != to.dim) throw ShapeMismatch("relabel changes dimension");
    auto s = slots_;
    s[i].space = to;
    OpTensor r(s);
    r.data_ = data_;
    return r;
}

bool OpTensor::is_zero() const {
    for (auto& v : data_)
        if (sgn(v) != 0) return false;
    return true;
}

Scalar OpTensor::max_abs() const {
    Scalar m = 0;
    for (auto& v : data_) {
        Scalar a = abs(v);
        if (a > m) m = a;
    }
    return m;
}

OpTensor& OpTensor::operator*=(const Scalar& c) {
    for (auto& v : data_) v *= c;
    return *this;
}

OpTensor operator+(const OpTensor& a, const OpTensor& b) {
    OpTensor r = b.aligned_to(a.slots_);
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += a.data_[i];
    return r;
}

OpTensor operator-(const OpTensor& a, const OpTensor& b) {
    OpTensor r = b.aligned_to(a.slots_);
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.data_[i] - r.data_[i];
    return r;
}

bool operator==(const OpTensor& a, const OpTensor& b) {
    if (a.slots_.size() != b.slots_.size()) return false;
    try {
        return b.aligned_to(a.slots_).data_ == a.data_;
    } catch (const ShapeMismatch&) {
        return false;
    }
}

OpTensor compose(const OpTensor& A, const OpTensor& B) {
    struct Use {
        bool out = false, in = false;
    };
    std::map<std::string, Use> ua, ub;
    std::map<std::string, Space> sp;
    for (auto& s : A.slots()) {
        (s.var == Var::Out ? ua[s.space.name].out : ua[s.space.name].in) = true;
        sp.emplace(s.space.name, s.space);
    }
    for (auto& s : B.slots()) {
        (s.var == Var::Out ? ub[s.space.name].out : ub[s.space.name].in) = true;
        auto it = sp.find(s.space.name);
        if (it == sp.end())
            sp.emplace(s.space.name, s.space);
        else
            check_compatible(it->second, s.space);
    }
    std::vector<std::string> contracted;
    for (auto& [name, a] : ua) {
        auto it = ub.find(name);
        if (it == ub.end()) continue;
        const Use& b = it->second;
        if (a.in && b.out)
            contracted.push_back(name);
        else if (a.in && b.in)
            throw ShapeMismatch("covector clash on '" + name + "'");
        else if (a.out && !a.in)
            throw ShapeMismatch("vector clash on '" + name + "'");
    }
    auto is_contracted = [&](const std::string& n) {
        for (auto& c : contracted)
            if (c == n) return true;
        return false;
    };
    std::vector<size_t> pa, pb;
    std::vector<Slot> out;
    for (size_t i = 0; i < A.slots().size(); ++i) {
        auto& s = A.slots()[i];
        if (s.var == Var::In && is_contracted(s.space.name)) continue;
        pa.push_back(i);
        out.push_back(s);
    }
    size_t nfa = pa.size();
    for (auto& c : contracted) pa.push_back(A.find(c, Var::In));
    for (auto& c : contracted) pb.push_back(B.find(c, Var::Out));
    size_t nfb0 = pb.size();
    for (size_t i = 0; i < B.slots().size(); ++i) {
        auto& s = B.slots()[i];
        if (s.var == Var::Out && is_contracted(s.space.name)) continue;
        pb.push_back(i);
        out.push_back(s);
    }
    OpTensor Ap = A.permuted(pa), Bp = B.permuted(pb);
    size_t fa = 1, kc = 1, fb = 1;
    for (size_t i = 0; i < nfa; ++i) fa *= Ap.slots()[i].space.dim;
    for (size_t i = nfa; i < Ap.slots().size(); ++i) kc *= Ap.slots()[i].space.dim;
    for (size_t i = nfb0; i < Bp.slots().size(); ++i) fb *= Bp.slots()[i].space.dim;
    OpTensor R(out);
    auto& rd = R.data();
    const auto& ad = Ap.data();
    const auto& bd = Bp.data();
    // collect nonzeros of B once per contracted row
    std::vector<std::vector<std::pair<size_t, const Scalar*>>> bnz(kc);
    for (size_t k = 0; k < kc; ++k)
        for (size_t j = 0; j < fb; ++j)
            if (sgn(bd[k * fb + j]) != 0) bnz[k].push_back({j, &bd[k * fb + j]});
    Scalar tmp;
    for (size_t i = 0; i < fa; ++i)
        for (size_t k = 0; k < kc; ++k) {
            const Scalar& aik = ad[i * kc + k];
            if (sgn(aik) == 0) continue;
            for (auto& [j, bp] : bnz[k]) {
                mpq_mul(tmp.get_mpq_t(), aik.get_mpq_t(), bp->get_mpq_t());
                rd[i * fb + j] += tmp;
            }
        }
    return R;
}

OpTensor tensor_product(const OpTensor& A, const OpTensor& B) {
    for (auto& a : A.slots())
        for (auto& b : B.slots())
            if (a.space.name == b.space.name) throw DuplicateSpace("space '" + a.space.name + "' in both factors");
    return compose(A, B);
}

OpTensor contract_covector(const OpTensor& xi, const OpTensor& A) {
    for (auto& s : xi.slots())
        if (s.var == Var::Out) throw ShapeMismatch("covector has an output slot");
    return compose(xi, A);
}

nlohmann::json to_json(const OpTensor& t) {
    nlohmann::json j;
    j["slots"] = nlohmann::json::array();
    for (auto& s : t.slots()) {
        const char* kind = s.space.kind == SpaceKind::Quantum ? "quantum"
                           : s.space.kind == SpaceKind::Vector ? "vector"
                                                               : "fused";
        j["slots"].push_back({{"space", s.space.name},
                              {"kind", kind},
                              {"dim", s.space.dim},
                              {"point", to_string(s.space.point)},
                              {"variance", s.var == Var::Out ? "out" : "in"}});
    }
    auto& d = j["entries"] = nlohmann::json::array();
    for (auto& v : t.data()) d.push_back(to_string(v));
    return j;
}

}  // namespace sov
