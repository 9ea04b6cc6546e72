// Weyl groups in the reflection representation (exact integer matrices),
// lengths via root inversions, reduced words, the iota action, folding
// generators t_i, and freely reduced braid words.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "preproj/dynkin.hpp"

namespace preproj {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

struct WeylElement {
    IMat m;
    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.m == b.m; }
    friend bool operator<(const WeylElement& a, const WeylElement& b) {
        for (int c = 0; c < a.m.cols(); ++c)
            for (int r = 0; r < a.m.rows(); ++r) {
                if (a.m(r, c) != b.m(r, c)) return a.m(r, c) < b.m(r, c);
            }
        return false;
    }
};

struct BraidLetter {
    int gen;
    int exp;  // +1 or -1
    friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
    std::vector<BraidLetter> letters;
    friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Free reduction (cancel adjacent a_i a_i^{-1}); no braid relations applied.
inline BraidWord braid_reduce(const BraidWord& w) {
    BraidWord out;
    for (const BraidLetter& l : w.letters) {
        if (!out.letters.empty() && out.letters.back().gen == l.gen &&
            out.letters.back().exp == -l.exp)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

inline BraidWord braid_concat(const BraidWord& a, const BraidWord& b) {
    BraidWord c = a;
    c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
    return braid_reduce(c);
}

inline BraidWord braid_inverse(const BraidWord& a) {
    BraidWord c;
    for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
        c.letters.push_back({it->gen, -it->exp});
    return c;
}

class WeylGroup {
  public:
    explicit WeylGroup(const DynkinGraph& graph) : g_(graph), n_(graph.rank) {
        index_.clear();
        for (int k = 0; k < n_; ++k) index_[g_.vertices[k]] = k;
        build_cartan();
        build_reflections();
        build_roots();
    }

    const DynkinGraph& graph() const { return g_; }
    int rank() const { return n_; }

    WeylElement identity() const { return {IMat::Identity(n_, n_)}; }
    WeylElement simple(int vertex) const { return {refl_[idx(vertex)]}; }

    WeylElement multiply(const WeylElement& a, const WeylElement& b) const {
        return {a.m * b.m};
    }
    WeylElement inverse(const WeylElement& a) const {
        // Finite order: a^{-1} = a^{ord-1}.
        WeylElement prev = identity(), x = a;
        while (!(x == identity())) {
            prev = x;
            x = multiply(x, a);
        }
        return prev;
    }

    WeylElement product(const std::vector<int>& word) const {
        WeylElement w = identity();
        for (int i : word) w = multiply(w, simple(i));
        return w;
    }

    /// Length by counting inversions of positive roots.
    int length(const WeylElement& w) const {
        int count = 0;
        for (const IVec& r : pos_roots_)
            if (is_negative(w.m * r)) ++count;
        return count;
    }

    bool is_reduced(const std::vector<int>& word) const {
        return length(product(word)) == int(word.size());
    }

    /// One reduced word realizing w.
    std::vector<int> reduced_word(WeylElement w) const {
        std::vector<int> rev;
        while (!(w == identity())) {
            int chosen = -1;
            for (int v : g_.vertices) {
                if (is_negative(w.m * simple_root(v))) { chosen = v; break; }
            }
            if (chosen < 0) throw std::logic_error("reduced_word: no descent found");
            rev.push_back(chosen);
            w = multiply(w, simple(chosen));
        }
        return {rev.rbegin(), rev.rend()};
    }

    /// All reduced words of w (exponential; fine at rank <= 4).
    std::vector<std::vector<int>> all_reduced_words(const WeylElement& w) const {
        if (w == identity()) return {{}};
        std::vector<std::vector<int>> out;
        for (int v : g_.vertices) {
            if (!is_negative(w.m * simple_root(v))) continue;
            for (auto& pre : all_reduced_words(multiply(w, simple(v)))) {
                pre.push_back(v);
                out.push_back(std::move(pre));
            }
        }
        return out;
    }

    /// Theoretical group order (used as the enumeration guard).
    long long group_order() const {
        auto fact = [](long long n) { long long f = 1; while (n > 1) f *= n--; return f; };
        switch (g_.kind) {
            case Kind::A: return fact(n_ + 1);
            case Kind::B: return (1LL << n_) * fact(n_);
            case Kind::D: return (1LL << (n_ - 1)) * fact(n_);
            case Kind::F: return 1152;
            case Kind::E:
                if (n_ == 6) return 51840;
                if (n_ == 7) return 2903040;
                return 696729600;
            default: throw std::invalid_argument("group_order: infinite (extended) type");
        }
    }

    std::vector<WeylElement> enumerate(long long guard = 1000000) const {
        if (group_order() > guard)
            throw std::runtime_error("enumerate_weyl: |W| = " + std::to_string(group_order()) +
                                     " exceeds guard " + std::to_string(guard));
        std::vector<WeylElement> all;
        std::map<WeylElement, bool> seen;
        std::vector<WeylElement> frontier{identity()};
        seen[identity()] = true;
        while (!frontier.empty()) {
            std::vector<WeylElement> next;
            for (const WeylElement& w : frontier) {
                all.push_back(w);
                for (int v : g_.vertices) {
                    WeylElement u = multiply(w, simple(v));
                    if (!seen.count(u)) {
                        seen[u] = true;
                        next.push_back(u);
                    }
                }
            }
            frontier = std::move(next);
        }
        return all;
    }

    WeylElement longest_element() const {
        WeylElement w = identity();
        bool grew = true;
        while (grew) {
            grew = false;
            for (int v : g_.vertices) {
                if (!is_negative(w.m * simple_root(v))) {
                    w = multiply(w, simple(v));
                    grew = true;
                    break;
                }
            }
        }
        return w;
    }

    int order_of(const WeylElement& w) const {
        WeylElement x = w;
        int k = 1;
        while (!(x == identity())) {
            x = multiply(x, w);
            ++k;
        }
        return k;
    }

    /// iota acting on W by relabeling generators (= conjugation by the
    /// permutation matrix of iota on simple roots).
    WeylElement iota_action(const WeylElement& w) const {
        require_ade();
        const IMat& p = iota_perm_matrix();
        return {p * w.m * p.transpose()};
    }
    bool is_iota_fixed(const WeylElement& w) const { return iota_action(w) == w; }

    /// t_i of Eq. (T) for a folded vertex i, as (element, reduced word).
    std::pair<WeylElement, std::vector<int>> t_generator(int i) const {
        require_ade();
        NakayamaPerm iota = nakayama_perm(g_);
        std::vector<int> reps = folded_vertices(g_);
        if (std::find(reps.begin(), reps.end(), i) == reps.end())
            throw std::invalid_argument("t_generator: " + std::to_string(i) +
                                        " is not a folded vertex");
        std::vector<int> word;
        if (iota(i) == i)
            word = {i};
        else if (g_.adjacent(i, iota(i)))
            word = {i, iota(i), i};
        else
            word = {i, iota(i)};
        return {product(word), word};
    }

    IVec simple_root(int vertex) const {
        IVec r = IVec::Zero(n_);
        r(idx(vertex)) = 1;
        return r;
    }
    static bool is_negative(const IVec& r) {
        for (int k = 0; k < r.size(); ++k) {
            if (r(k) < 0) return true;
            if (r(k) > 0) return false;
        }
        return false;
    }
    const std::vector<IVec>& positive_roots() const { return pos_roots_; }

  private:
    DynkinGraph g_;
    int n_;
    std::map<int, int> index_;
    IMat cartan_;
    std::vector<IMat> refl_;
    std::vector<IVec> pos_roots_;
    mutable std::optional<IMat> iota_mat_;

    int idx(int vertex) const {
        auto it = index_.find(vertex);
        if (it == index_.end())
            throw std::invalid_argument("unknown vertex " + std::to_string(vertex));
        return it->second;
    }
    void require_ade() const {
        if (!g_.simply_laced())
            throw std::invalid_argument("operation requires a simply-laced graph");
    }

    void build_cartan() {
        cartan_ = IMat::Zero(n_, n_);
        for (int a = 0; a < n_; ++a) cartan_(a, a) = 2;
        for (const auto& e : g_.edges) {
            int a = idx(e.i), b = idx(e.j);
            if (e.m == 3) {
                cartan_(a, b) = cartan_(b, a) = -1;
            } else {
                // m = 4: asymmetric pair; the order-4 relation holds either way
                cartan_(a, b) = -2;
                cartan_(b, a) = -1;
            }
        }
    }
    void build_reflections() {
        refl_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            IMat s = IMat::Identity(n_, n_);
            for (int j = 0; j < n_; ++j) s(i, j) -= cartan_(i, j);
            refl_[i] = s;
        }
    }
    void build_roots() {
        std::map<std::vector<long long>, bool> seen;
        std::vector<IVec> frontier;
        auto key = [&](const IVec& v) {
            return std::vector<long long>(v.data(), v.data() + v.size());
        };
        for (int v : g_.vertices) {
            IVec r = simple_root(v);
            seen[key(r)] = true;
            frontier.push_back(r);
        }
        std::vector<IVec> all = frontier;
        while (!frontier.empty()) {
            std::vector<IVec> next;
            for (const IVec& r : frontier)
                for (int i = 0; i < n_; ++i) {
                    IVec u = refl_[i] * r;
                    if (!seen.count(key(u))) {
                        seen[key(u)] = true;
                        next.push_back(u);
                        all.push_back(u);
                    }
                }
            frontier = std::move(next);
        }
        for (const IVec& r : all)
            if (!is_negative(r)) pos_roots_.push_back(r);
    }

    const IMat& iota_perm_matrix() const {
        if (!iota_mat_) {
            NakayamaPerm iota = nakayama_perm(g_);
            IMat p = IMat::Zero(n_, n_);
            for (int v : g_.vertices) p(idx(iota(v)), idx(v)) = 1;
            iota_mat_ = p;
        }
        return *iota_mat_;
    }
};

}  // namespace preproj
