#include "liereduce/calculus/taylor.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace liereduce {

JetSpace::JetSpace(std::size_t nvars, int degree) : n_(nvars), d_(degree)
{
    std::vector<int> alpha(n_, 0);
    for (int total = 0; total <= d_; ++total) {
        std::function<void(std::size_t, int)> fill = [&](std::size_t i, int left) {
            if (i + 1 == n_ || n_ == 0) {
                if (n_ > 0)
                    alpha[i] = left;
                else if (left != 0)
                    return;
                monos_.push_back(alpha);
                deg_.push_back(total);
                return;
            }
            for (int k = left; k >= 0; --k) {
                alpha[i] = k;
                fill(i + 1, left - k);
            }
            alpha[i] = 0;
        };
        fill(0, total);
        if (n_ == 0)
            break;
    }
    for (std::size_t i = 0; i < monos_.size(); ++i)
        index_.emplace(monos_[i], i);
    for (std::size_t i = 0; i < monos_.size(); ++i)
        for (std::size_t j = 0; j < monos_.size(); ++j) {
            if (deg_[i] + deg_[j] > d_)
                continue;
            std::vector<int> s(n_);
            for (std::size_t v = 0; v < n_; ++v)
                s[v] = monos_[i][v] + monos_[j][v];
            prod_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             static_cast<std::uint32_t>(index_.at(s))});
        }
}

std::shared_ptr<const JetSpace> JetSpace::get(std::size_t nvars, int degree)
{
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>, std::shared_ptr<const JetSpace>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{nvars, degree}];
    if (!slot)
        slot = std::make_shared<JetSpace>(nvars, degree);
    return slot;
}

std::size_t JetSpace::index(const std::vector<int>& alpha) const
{
    auto it = index_.find(alpha);
    if (it == index_.end())
        throw Error("multi-index outside the jet space");
    return it->second;
}

TaylorJet::TaylorJet(std::shared_ptr<const JetSpace> space, double value) : space_(std::move(space))
{
    c_.assign(space_->size(), 0.0);
    c_[0] = value;
}

TaylorJet TaylorJet::variable(std::shared_ptr<const JetSpace> space, std::size_t i, double value)
{
    TaylorJet r(space, value);
    if (space->degree() >= 1) {
        std::vector<int> a(space->nvars(), 0);
        a[i] = 1;
        r.c_[space->index(a)] = 1.0;
    }
    return r;
}

double TaylorJet::coefficient(const std::vector<int>& alpha) const { return c_[space_->index(alpha)]; }

double TaylorJet::derivative(const std::vector<int>& alpha) const
{
    double f = 1;
    for (int a : alpha)
        for (int k = 2; k <= a; ++k)
            f *= k;
    return coefficient(alpha) * f;
}

TaylorJet TaylorJet::operator-() const
{
    TaylorJet r = *this;
    for (auto& v : r.c_)
        v = -v;
    return r;
}

TaylorJet operator+(const TaylorJet& a, const TaylorJet& b)
{
    TaylorJet r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] += b.c_[i];
    return r;
}

TaylorJet operator-(const TaylorJet& a, const TaylorJet& b)
{
    TaylorJet r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] -= b.c_[i];
    return r;
}

TaylorJet operator*(const TaylorJet& a, const TaylorJet& b)
{
    TaylorJet r(a.space_, 0.0);
    for (auto& p : a.space_->products())
        r.c_[p.k] += a.c_[p.i] * b.c_[p.j];
    return r;
}

TaylorJet operator*(double s, const TaylorJet& a)
{
    TaylorJet r = a;
    for (auto& v : r.c_)
        v *= s;
    return r;
}

TaylorJet TaylorJet::compose(const std::vector<double>& derivs) const
{
    TaylorJet h = *this;
    h.c_[0] = 0;
    TaylorJet r(space_, derivs.at(0));
    TaylorJet hp(space_, 1.0);
    double fact = 1;
    for (int k = 1; k <= space_->degree(); ++k) {
        hp = hp * h;
        fact *= k;
        r = r + (derivs.at(static_cast<std::size_t>(k)) / fact) * hp;
    }
    return r;
}

TaylorJet TaylorJet::reciprocal() const
{
    double a0 = c_[0];
    if (a0 == 0.0 || !std::isfinite(a0))
        throw DivisionByZeroAtPoint("denominator vanishes at the evaluation point");
    std::vector<double> d(static_cast<std::size_t>(space_->degree()) + 1);
    double p = 1 / a0, sign = 1, fact = 1;
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = sign * fact * p;
        p /= a0;
        sign = -sign;
        fact *= static_cast<double>(k + 1);
    }
    return compose(d);
}

TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) { return a * b.reciprocal(); }

TaylorJet exp(const TaylorJet& a)
{
    std::vector<double> d(static_cast<std::size_t>(a.space().degree()) + 1, std::exp(a.value()));
    return a.compose(d);
}

TaylorJet log(const TaylorJet& a)
{
    double a0 = a.value();
    if (!(a0 > 0))
        throw DivisionByZeroAtPoint("logarithm of a non-positive value at the evaluation point");
    std::vector<double> d(static_cast<std::size_t>(a.space().degree()) + 1);
    d[0] = std::log(a0);
    double p = 1 / a0, sign = 1, fact = 1;
    for (std::size_t k = 1; k < d.size(); ++k) {
        d[k] = sign * fact * p;
        p /= a0;
        sign = -sign;
        fact *= static_cast<double>(k);
    }
    return a.compose(d);
}

namespace {

// Real power with the real odd-root branch for negative bases.
double real_pow(double x, const mpq_class& q)
{
    if (x >= 0)
        return std::pow(x, q.get_d());
    if (q.get_den() % 2 == 0)
        throw DivisionByZeroAtPoint("even root of a negative value at the evaluation point");
    double m = std::pow(-x, q.get_d());
    return q.get_num() % 2 == 0 ? m : -m;
}

} // namespace

TaylorJet pow(const TaylorJet& a, const mpq_class& q)
{
    if (q.get_den() == 1 && q >= 0 && q <= 8) {
        TaylorJet r(a.space_ptr(), 1.0);
        for (long k = 0; k < q.get_num().get_si(); ++k)
            r = r * a;
        return r;
    }
    double a0 = a.value();
    if (a0 == 0.0)
        throw DivisionByZeroAtPoint("power singular at the evaluation point");
    std::vector<double> d(static_cast<std::size_t>(a.space().degree()) + 1);
    mpq_class e = q;
    double coef = 1;
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = coef * real_pow(a0, e);
        coef *= e.get_d();
        e -= 1;
    }
    return a.compose(d);
}

double lambertw(double x)
{
    const double inv_e = std::exp(-1.0);
    if (std::isnan(x) || x < -inv_e)
        throw LambertWDomain("LambertW argument below -1/e");
    if (x == 0.0)
        return 0.0;
    if (x == -inv_e)
        return -1.0;
    double w;
    if (x < 1) {
        double p = std::sqrt(2 * (std::exp(1.0) * x + 1));
        w = -1 + p - p * p / 3 + 11.0 / 72 * p * p * p;
        if (x > -0.25)
            w = x * (1 - x);
    } else {
        w = std::log(x);
        if (x > 3)
            w -= std::log(w);
    }
    for (int i = 0; i < 50; ++i) {
        double ew = std::exp(w);
        double f = w * ew - x;
        double wp1 = w + 1;
        double step = f / (ew * wp1 - (w + 2) * f / (2 * wp1));
        w -= step;
        if (std::fabs(step) <= 1e-16 * (1 + std::fabs(w)))
            break;
    }
    return w;
}

TaylorJet lambertw(const TaylorJet& a)
{
    TaylorJet w(a.space_ptr(), lambertw(a.value()));
    if (w.value() == -1.0)
        throw LambertWDomain("LambertW not differentiable at -1/e");
    for (int i = 0; i <= a.space().degree() + 1; ++i) {
        TaylorJet ew = exp(w);
        w = w - (w * ew - a) / (ew * (w + TaylorJet(a.space_ptr(), 1.0)));
    }
    return w;
}

namespace {

class Evaluator {
public:
    Evaluator(const EvalPoint& p, int degree, const FunctionTable& fns)
        : p_(p), fns_(fns), space_(JetSpace::get(p.variables.size(), degree))
    {
    }

    TaylorJet form(const CanonicalForm& f)
    {
        TaylorJet n = poly(f.num());
        if (f.den().is_one())
            return n;
        return n / poly(f.den());
    }

private:
    TaylorJet constant(double v) const { return TaylorJet(space_, v); }

    TaylorJet named(const std::string& name) const
    {
        for (std::size_t i = 0; i < p_.variables.size(); ++i)
            if (p_.variables[i].first == name)
                return TaylorJet::variable(space_, i, p_.variables[i].second);
        if (auto it = p_.constants.find(name); it != p_.constants.end())
            return constant(it->second);
        throw Error("no numeric binding for '" + name + "'");
    }

    const TaylorJet& atom(AtomId a)
    {
        if (auto it = memo_.find(a); it != memo_.end())
            return it->second;
        TaylorJet v = compute(a);
        return memo_.emplace(a, std::move(v)).first->second;
    }

    TaylorJet compute(AtomId a)
    {
        const AtomInfo& info = atom_info(a);
        switch (info.kind) {
        case AtomKind::Symbol:
        case AtomKind::Parameter:
        case AtomKind::Jet:
            return named(info.key);
        case AtomKind::Function: {
            auto it = fns_.find(info.name);
            if (it == fns_.end())
                throw Error("no numeric implementation for function '" + info.name + "'");
            TaylorJet arg = form(*info.arg);
            std::vector<double> vals = it->second(arg.value(), info.order + space_->degree() + 1);
            std::vector<double> d(vals.begin() + info.order, vals.end());
            return arg.compose(d);
        }
        case AtomKind::Exp:
            return exp(form(*info.arg));
        case AtomKind::Ln:
            return log(form(*info.arg));
        case AtomKind::LambertW:
            return lambertw(form(*info.arg));
        case AtomKind::Radical:
            return form(*info.arg);
        case AtomKind::Surd:
            return constant(info.integer.get_d());
        }
        throw UnsupportedNode("unknown atom kind");
    }

    TaylorJet poly(const Poly& p)
    {
        TaylorJet acc = constant(0);
        for (auto& t : p.terms()) {
            TaylorJet m = constant(t.c.get_d());
            for (auto& [a, e] : t.m.factors()) {
                const TaylorJet& b = atom(a);
                if (e.is_integer() && e.is_negative())
                    m = m * pow(b, mpq_class(-e.num())).reciprocal();
                else
                    m = m * pow(b, e.to_mpq());
            }
            acc = acc + m;
        }
        return acc;
    }

    const EvalPoint& p_;
    const FunctionTable& fns_;
    std::shared_ptr<const JetSpace> space_;
    std::unordered_map<AtomId, TaylorJet> memo_;
};

} // namespace

TaylorJet eval_jet(const CanonicalForm& f, const EvalPoint& point, int degree, const FunctionTable& fns)
{
    return Evaluator(point, degree, fns).form(f);
}

TaylorJet eval_jet(const Expr& e, const EvalPoint& point, int degree, const FunctionTable& fns)
{
    return eval_jet(e.canonical(), point, degree, fns);
}

double eval_number(const CanonicalForm& f, const std::map<std::string, double>& constants, const FunctionTable& fns)
{
    EvalPoint p;
    p.constants = constants;
    return eval_jet(f, p, 0, fns).value();
}

} // namespace liereduce
