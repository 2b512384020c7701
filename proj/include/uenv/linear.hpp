#pragma once

#include "uenv/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <utility>

namespace uenv {

/// Finite linear combination of basis keys with exact coefficients.
/// Zero coefficients are never stored, so `empty()` is the zero test.
template <class Key>
class LinComb {
public:
    using key_type = Key;
    using map_type = std::map<Key, Scalar>;
    using const_iterator = typename map_type::const_iterator;

    LinComb() = default;
    explicit LinComb(const Key& k, const Scalar& c = Scalar(1)) { add(k, c); }

    void add(const Key& k, const Scalar& c)
    {
        if (sgn(c) == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    void add(Key&& k, const Scalar& c)
    {
        if (sgn(c) == 0) {
            return;
        }
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), c);
        } else {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    void add(const LinComb& other, const Scalar& c = Scalar(1))
    {
        if (sgn(c) == 0) {
            return;
        }
        for (const auto& [k, v] : other.terms_) {
            add(k, v * c);
        }
    }

    LinComb& operator+=(const LinComb& o) { add(o); return *this; }
    LinComb& operator-=(const LinComb& o) { add(o, Scalar(-1)); return *this; }
    LinComb& operator*=(const Scalar& c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
        } else {
            for (auto& [k, v] : terms_) {
                v *= c;
            }
        }
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { a += b; return a; }
    friend LinComb operator-(LinComb a, const LinComb& b) { a -= b; return a; }
    friend LinComb operator*(const Scalar& c, LinComb a) { a *= c; return a; }
    friend LinComb operator-(LinComb a) { a *= Scalar(-1); return a; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] const_iterator begin() const { return terms_.begin(); }
    [[nodiscard]] const_iterator end() const { return terms_.end(); }
    [[nodiscard]] const map_type& terms() const { return terms_; }

    [[nodiscard]] Scalar coeff(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    /// Keep only the terms whose key satisfies `pred`.
    template <class Pred>
    [[nodiscard]] LinComb filtered(Pred&& pred) const
    {
        LinComb out;
        for (const auto& [k, v] : terms_) {
            if (pred(k)) {
                out.terms_.emplace(k, v);
            }
        }
        return out;
    }

private:
    map_type terms_;
};

/// A linear operator given on basis keys; extended linearly by `apply`.
template <class From, class To = From>
using BasisOp = std::function<LinComb<To>(const From&)>;

template <class From, class To>
LinComb<To> apply(const BasisOp<From, To>& op, const LinComb<From>& v)
{
    LinComb<To> out;
    for (const auto& [k, c] : v) {
        out.add(op(k), c);
    }
    return out;
}

template <class From, class To, class F>
LinComb<To> apply_fn(F&& op, const LinComb<From>& v)
{
    LinComb<To> out;
    for (const auto& [k, c] : v) {
        out.add(op(k), c);
    }
    return out;
}

/// Caches the column of a basis operator per key. Not thread-safe.
template <class From, class To = From>
class MemoOp {
public:
    explicit MemoOp(BasisOp<From, To> op)
        : op_(std::move(op)), cache_(std::make_shared<std::map<From, LinComb<To>>>())
    {
    }

    const LinComb<To>& operator()(const From& k) const
    {
        auto it = cache_->find(k);
        if (it != cache_->end()) {
            return it->second;
        }
        auto col = op_(k);
        return cache_->emplace(k, std::move(col)).first->second;
    }

    LinComb<To> operator()(const LinComb<From>& v) const
    {
        LinComb<To> out;
        for (const auto& [k, c] : v) {
            out.add((*this)(k), c);
        }
        return out;
    }

    [[nodiscard]] BasisOp<From, To> as_op() const
    {
        auto self = *this;
        return [self](const From& k) { return self(k); };
    }

private:
    BasisOp<From, To> op_;
    std::shared_ptr<std::map<From, LinComb<To>>> cache_;
};

} // namespace uenv
