#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "liereduce/calculus/diff.hpp"
#include "liereduce/calculus/taylor.hpp"
#include "liereduce/cli/suites.hpp"
#include "liereduce/lie/lie.hpp"
#include "liereduce/parser/parser.hpp"

namespace liereduce {

namespace {

using Rng = std::mt19937_64;

struct ExprGen {
    Rng& rng;
    std::vector<Expr> leaves;
    bool allow_div = true;
    bool allow_exp = true;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Expr rational()
    {
        long p = std::uniform_int_distribution<long>(-5, 5)(rng);
        long q = std::uniform_int_distribution<long>(1, 3)(rng);
        return Expr(mpq_class(p == 0 ? 1 : p, q));
    }

    Expr leaf()
    {
        int k = pick(static_cast<int>(leaves.size()) + 1);
        return k == static_cast<int>(leaves.size()) ? rational() : leaves[k];
    }

    Expr operator()(int depth)
    {
        if (depth == 0 || pick(4) == 0)
            return leaf();
        switch (pick(6)) {
        case 0:
            return (*this)(depth - 1) + (*this)(depth - 1);
        case 1:
            return (*this)(depth - 1) - (*this)(depth - 1);
        case 2:
            return (*this)(depth - 1) * (*this)(depth - 1);
        case 3:
            if (allow_div) {
                Expr d = (*this)(depth - 1);
                if (!is_zero(d))
                    return (*this)(depth - 1) / d;
            }
            return (*this)(depth - 1) * leaf();
        case 4:
            return Expr::power((*this)(depth - 1), mpq_class(pick(2) + 2));
        default:
            if (allow_exp)
                return exp(leaf() * Expr(mpq_class(1, 2)));
            return leaf() + leaf();
        }
    }
};

std::string seed_text(const PropertyOptions& o)
{
    return "seed=" + std::to_string(o.seed) + " trials=" + std::to_string(o.trials);
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void tally(Check& c, int failures, int trials, const std::string& first)
{
    c.pass = failures == 0;
    c.verdict = c.pass ? "Holds" : "Violated";
    c.detail = std::to_string(trials - failures) + "/" + std::to_string(trials) + " trials";
    if (!first.empty())
        c.detail += "; first failure " + first;
}

Expr X() { return Expr::symbol("x"); }
Expr Y() { return Expr::symbol("y"); }
Expr T() { return Expr::symbol("t"); }

} // namespace

std::vector<Check> property_checks(const PropertyOptions& opt)
{
    std::vector<Check> out;
    const int n = opt.trials;
    const std::string in = seed_text(opt);

    out.push_back(timed("prop.ring", in, [&](Check& c) {
        Rng rng(opt.seed);
        ExprGen g{rng, {X(), Y(), Expr::parameter("k0"), Expr::power(X(), mpq_class(1, 2))}};
        int bad = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            Expr a = g(3), b = g(3), d = g(3);
            bool ok = equivalent(a + b, b + a) && equivalent(a * b, b * a) &&
                      equivalent((a + b) + d, a + (b + d)) && equivalent((a * b) * d, a * (b * d)) &&
                      equivalent(a * (b + d), a * b + a * d) && is_zero(a - a) && equivalent(a * Expr(1), a) &&
                      (is_zero(a) || equivalent(a / a, Expr(1)));
            if (!ok && bad++ == 0)
                first = print(a) + " | " + print(b) + " | " + print(d);
        }
        tally(c, bad, n, first);
    }));

    out.push_back(timed("prop.parser", in, [&](Check& c) {
        Rng rng(opt.seed + 1);
        ExprGen g{rng, {X(), Y(), T(), Expr::parameter("c3"), parse("g(t)"), parse("D(u,x)"), parse("W(x)")}};
        int bad = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            Expr e = g(3);
            std::string s = print(e);
            Expr back = parse(s);
            bool ok = equivalent(back, e) && print(back) == s;
            if (!ok && bad++ == 0)
                first = s;
        }
        tally(c, bad, n, first);
    }));

    out.push_back(timed("prop.diff", in, [&](Check& c) {
        Rng rng(opt.seed + 2);
        ExprGen g{rng, {X(), Y(), T(), parse("g(t)"), parse("ln(x)")}};
        int bad = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            Expr e = g(3);
            bool ok = equivalent(diff(diff(e, X()), Y()), diff(diff(e, Y()), X())) &&
                      equivalent(diff(diff(e, X()), T()), diff(diff(e, T()), X()));
            if (!ok && bad++ == 0)
                first = print(e);
        }
        tally(c, bad, n, first);
    }));

    out.push_back(timed("prop.total_derivative", in, [&](Check& c) {
        Rng rng(opt.seed + 3);
        ExprGen g{rng, {X(), Y(), T(), parse("u"), parse("D(u,x)"), parse("D(u,t,y)"), parse("g(t)")}};
        int bad = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            Expr e = g(3);
            bool ok = equivalent(total_derivative(total_derivative(e, X()), T()),
                                 total_derivative(total_derivative(e, T()), X())) &&
                      equivalent(total_derivative(total_derivative(e, Y()), X()),
                                 total_derivative(total_derivative(e, X()), Y()));
            if (!ok && bad++ == 0)
                first = print(e);
        }
        tally(c, bad, n, first);
    }));

    out.push_back(timed("prop.ad_vs_fd", in, [&](Check& c) {
        Rng rng(opt.seed + 4);
        ExprGen g{rng, {X(), Y()}};
        g.allow_div = false;
        std::uniform_real_distribution<double> pt(-1, 1);
        int bad = 0;
        double worst = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            // Denominator bounded away from zero keeps the sample smooth.
            Expr e = g(3) / (Expr(2) + Expr::power(g(2), mpq_class(2)));
            double x0 = pt(rng), y0 = pt(rng);
            EvalPoint at{{{"x", x0}, {"y", y0}}, {}};
            TaylorJet J = eval_jet(e, at, 1);
            const CanonicalForm& f = e.canonical();
            double h = 1e-5;
            bool ok_all = true;
            for (int k = 0; k < 2; ++k) {
                double ad = J.derivative(k == 0 ? std::vector<int>{1, 0} : std::vector<int>{0, 1});
                std::map<std::string, double> p{{"x", x0}, {"y", y0}}, m = p;
                (k == 0 ? p["x"] : p["y"]) += h;
                (k == 0 ? m["x"] : m["y"]) -= h;
                double fd = (eval_number(f, p) - eval_number(f, m)) / (2 * h);
                double err = std::fabs(ad - fd) / std::max(1.0, std::fabs(ad));
                worst = std::max(worst, err);
                ok_all = ok_all && err <= 1e-6;
            }
            if (!ok_all && bad++ == 0)
                first = print(e);
        }
        tally(c, bad, n, first);
        c.detail += "; max rel err " + sci(worst);
    }));

    out.push_back(timed("prop.lambertw", in, [&](Check& c) {
        Rng rng(opt.seed + 5);
        std::uniform_real_distribution<double> neg(-std::exp(-1.0), 0.0), lg(-6, 6);
        int bad = 0;
        double worst = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            double x = i % 4 == 0 ? neg(rng) : std::pow(10.0, lg(rng));
            double w = lambertw(x);
            double r = std::fabs(w * std::exp(w) - x) / std::max(1.0, std::fabs(x));
            worst = std::max(worst, r);
            if (!(r < 1e-13) && bad++ == 0)
                first = "x=" + sci(x);
        }
        tally(c, bad, n, first);
        c.detail += "; max residual " + sci(worst);
    }));

    out.push_back(timed("prop.jacobi", in, [&](Check& c) {
        Rng rng(opt.seed + 6);
        static const char* kinds[] = {"v0", "x", "y", "z"};
        static const char* opaque[] = {"f(t)", "g(t)", "h(t)", "f1(t)", "g1(t)", "h1(t)"};
        std::uniform_int_distribution<int> kd(0, 3), od(0, 5), cd(-3, 3), mode(0, 2);
        auto arg = [&]() -> Expr {
            if (mode(rng) == 0)
                return parse(opaque[od(rng)]);
            Expr p(0);
            for (int k = 0; k <= 2; ++k)
                p = p + Expr(cd(rng)) * Expr::power(T(), mpq_class(k));
            return p;
        };
        auto gen = [&]() {
            const char* k = kinds[kd(rng)];
            return std::string(k) == "v0" ? generator(k) : generator(k, arg());
        };
        int bad = 0;
        std::string first;
        for (int i = 0; i < n; ++i) {
            VectorField a = gen(), b = gen(), d = gen();
            VectorField j = commutator(a, commutator(b, d)) + commutator(b, commutator(d, a)) +
                            commutator(d, commutator(a, b));
            if (!j.is_zero() && bad++ == 0)
                first = "trial " + std::to_string(i);
        }
        tally(c, bad, n, first);
    }));
    return out;
}

} // namespace liereduce
