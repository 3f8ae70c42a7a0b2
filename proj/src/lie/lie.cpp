#include "liereduce/lie/lie.hpp"

#include <algorithm>
#include <functional>

#include "liereduce/calculus/diff.hpp"

namespace liereduce {

JetFrame JetFrame::pde(std::vector<std::string> independent, const std::string& dependent)
{
    JetFrame f;
    for (auto& n : independent)
        f.indep_.push_back(Expr::symbol(n));
    f.dep_ = Expr::jet(dependent);
    f.dep_name_ = dependent;
    return f;
}

JetFrame JetFrame::ode(const std::string& independent, const std::string& dependent)
{
    JetFrame f;
    f.indep_.push_back(Expr::symbol(independent));
    f.dep_ = Expr::function(dependent, 0, f.indep_[0]);
    f.dep_name_ = dependent;
    f.ode_ = true;
    return f;
}

const JetFrame& JetFrame::zk()
{
    static const JetFrame f = pde({"t", "x", "y"}, "u");
    return f;
}

Expr JetFrame::jet(const std::vector<std::size_t>& index) const
{
    if (ode_)
        return Expr::function(dep_name_, static_cast<int>(index.size()), indep_[0]);
    std::vector<std::string> names;
    for (std::size_t i : index)
        names.push_back(indep_.at(i).name());
    return Expr::jet(dep_name_, std::move(names));
}

Expr JetFrame::total_derivative(const Expr& e, std::size_t i) const
{
    if (ode_)
        return diff(e, indep_.at(i));
    return liereduce::total_derivative(e, indep_.at(i));
}

Expr JetFrame::partial(const Expr& e, const Expr& coordinate) const
{
    return ode_ ? diff_frozen(e, coordinate) : diff(e, coordinate);
}

VectorField::VectorField(const JetFrame& frame, std::vector<Expr> xi, Expr phi)
    : frame_(std::make_shared<const JetFrame>(frame)), xi_(std::move(xi)), phi_(std::move(phi))
{
    if (xi_.size() != frame_->independent().size())
        throw Error("vector field arity does not match its frame");
}

std::vector<Expr> VectorField::components() const
{
    std::vector<Expr> c = xi_;
    c.push_back(phi_);
    return c;
}

Expr VectorField::apply(const Expr& f) const
{
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < xi_.size(); ++i)
        if (!liereduce::is_zero(xi_[i]))
            terms.push_back(xi_[i] * frame_->partial(f, frame_->independent()[i]));
    if (!liereduce::is_zero(phi_))
        terms.push_back(phi_ * frame_->partial(f, frame_->dependent()));
    return Expr::from_form(Expr::sum(std::move(terms)).canonical());
}

bool VectorField::is_zero() const
{
    for (auto& c : components())
        if (!liereduce::is_zero(c))
            return false;
    return true;
}

VectorField VectorField::operator+(const VectorField& o) const
{
    std::vector<Expr> xi;
    for (std::size_t i = 0; i < xi_.size(); ++i)
        xi.push_back(Expr::from_form(xi_[i].canonical() + o.xi_[i].canonical()));
    return VectorField(*frame_, std::move(xi), Expr::from_form(phi_.canonical() + o.phi_.canonical()));
}

VectorField VectorField::operator-(const VectorField& o) const { return *this + o.scaled(Expr(-1)); }

VectorField VectorField::scaled(const Expr& s) const
{
    std::vector<Expr> xi;
    for (auto& c : xi_)
        xi.push_back(Expr::from_form(c.canonical() * s.canonical()));
    return VectorField(*frame_, std::move(xi), Expr::from_form(phi_.canonical() * s.canonical()));
}

bool same_field(const VectorField& a, const VectorField& b) { return (a - b).is_zero(); }

VectorField generator(const std::string& kind, const Expr& arg)
{
    const JetFrame& F = JetFrame::zk();
    Expr t = Expr::symbol("t"), x = Expr::symbol("x"), y = Expr::symbol("y"), u = Expr::jet("u");
    auto d = [&](int k) { return diff(arg, t, k); };
    Expr half(mpq_class(1, 2)), sixth(mpq_class(1, 6));
    if (kind == "v0")
        return VectorField(F, {Expr(0), Expr(2) * x, y}, Expr(2) * u);
    if (kind == "x")
        return VectorField(F, {Expr(0), arg, Expr(0)}, -d(1));
    if (kind == "y")
        return VectorField(F, {Expr(0), half * y * d(1), arg}, -half * y * d(2));
    if (kind == "z")
        return VectorField(F, {arg, sixth * (Expr(2) * x * d(1) + y * y * d(2)), Expr(mpq_class(2, 3)) * y * d(1)},
                           sixth * (Expr(-4) * u * d(1) - Expr(2) * x * d(2) - y * y * d(3)));
    throw UnknownKind("unknown generator kind '" + kind + "'");
}

VectorField commutator(const VectorField& v, const VectorField& w)
{
    std::vector<Expr> xi;
    for (std::size_t i = 0; i < v.xi().size(); ++i)
        xi.push_back(Expr::from_form(v.apply(w.xi()[i]).canonical() - w.apply(v.xi()[i]).canonical()));
    Expr phi = Expr::from_form(v.apply(w.phi()).canonical() - w.apply(v.phi()).canonical());
    return VectorField(v.frame(), std::move(xi), phi);
}

namespace {

bool free_of_coordinates(const CanonicalForm& f, const JetFrame& frame)
{
    std::vector<AtomId> coords;
    for (auto& c : frame.independent())
        coords.push_back(atom_of(c));
    for (AtomId a : f.atoms()) {
        for (AtomId l : atom_info(a).leaves) {
            const AtomInfo& li = atom_info(l);
            if (li.kind == AtomKind::Function || li.kind == AtomKind::Jet)
                return false;
            if (std::find(coords.begin(), coords.end(), l) != coords.end())
                return false;
        }
    }
    return true;
}

// lambda with b == lambda * a componentwise, when lambda is coordinate-free.
std::optional<CanonicalForm> proportional(const VectorField& b, const VectorField& a)
{
    auto bc = b.components(), ac = a.components();
    std::optional<CanonicalForm> lambda;
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (!is_zero(ac[i])) {
            lambda = bc[i].canonical() / ac[i].canonical();
            break;
        }
    }
    if (!lambda || !free_of_coordinates(*lambda, a.frame()))
        return std::nullopt;
    for (std::size_t i = 0; i < ac.size(); ++i)
        if (!(bc[i].canonical() - *lambda * ac[i].canonical()).is_zero())
            return std::nullopt;
    return lambda;
}

CanonicalForm inv_factorial(long k)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return CanonicalForm(mpq_class(1, f));
}

} // namespace

VectorField adjoint(const VectorField& v, const VectorField& w0, const Expr& eps, int max_terms)
{
    const CanonicalForm me = -eps.canonical();
    std::vector<VectorField> b{w0};
    auto partial_sum = [&](std::size_t upto) {
        VectorField acc = w0.scaled(Expr(0));
        for (std::size_t j = 0; j < upto; ++j)
            acc = acc + b[j].scaled(Expr::from_form(me.powi(static_cast<long>(j)) * inv_factorial(static_cast<long>(j))));
        return acc;
    };
    for (int k = 1; k <= max_terms; ++k) {
        b.push_back(commutator(v, b.back()));
        const VectorField& bk = b.back();
        std::size_t m = b.size() - 2;
        if (bk.is_zero())
            return partial_sum(b.size() - 1);
        if (auto lambda = proportional(bk, b[m])) {
            // b_{m+j} = lambda^j b_m for all j >= 0.
            CanonicalForm tail = make_exp(*lambda * me);
            for (std::size_t j = 0; j < m; ++j)
                tail -= (*lambda * me).powi(static_cast<long>(j)) * inv_factorial(static_cast<long>(j));
            tail = tail * lambda->powi(-static_cast<long>(m));
            return partial_sum(m) + b[m].scaled(Expr::from_form(tail));
        }
        if (b.size() == 3) {
            if (auto lambda = proportional(bk, b[0])) {
                // b_2 = mu^2 b_0: cosh(mu eps) b_0 - sinh(mu eps)/mu b_1.
                auto q = lambda->as_rational();
                if (q && *q > 0) {
                    CanonicalForm mu = lambda->pow(QExp(1, 2));
                    CanonicalForm ep = make_exp(mu * eps.canonical()), em = make_exp(-(mu * eps.canonical()));
                    CanonicalForm ch = (ep + em) * CanonicalForm(mpq_class(1, 2));
                    CanonicalForm sh = (ep - em) * CanonicalForm(mpq_class(1, 2));
                    return b[0].scaled(Expr::from_form(ch)) - b[1].scaled(Expr::from_form(sh / mu));
                }
            }
        }
    }
    throw SeriesDoesNotClose("iterated brackets neither vanish nor repeat within " + std::to_string(max_terms) +
                             " terms");
}

namespace {

// Jet coordinates of the frame present in e, as sorted multi-indices.
std::vector<std::vector<std::size_t>> jets_in(const Expr& e, const JetFrame& frame)
{
    std::vector<std::vector<std::size_t>> out;
    const auto& ind = frame.independent();
    for (AtomId a : e.canonical().atoms()) {
        const AtomInfo& info = atom_info(a);
        if (frame.is_ode()) {
            if (info.kind == AtomKind::Function && info.order > 0 &&
                Expr::function(info.name, 0, ind[0]).canonical() == frame.dependent().canonical() &&
                info.arg->as_atom() == std::optional<AtomId>(atom_of(ind[0])))
                out.emplace_back(static_cast<std::size_t>(info.order), 0);
        } else if (info.kind == AtomKind::Jet && !info.index.empty() && info.name == frame.dependent().name()) {
            std::vector<std::size_t> idx;
            for (auto& n : info.index) {
                auto it = std::find_if(ind.begin(), ind.end(), [&](const Expr& s) { return s.name() == n; });
                if (it == ind.end())
                    throw Error("jet index outside the frame: " + n);
                idx.push_back(static_cast<std::size_t>(it - ind.begin()));
            }
            std::sort(idx.begin(), idx.end());
            out.push_back(idx);
        }
    }
    return out;
}

ProlongedField prolong_jets(const VectorField& v, std::vector<std::vector<std::size_t>> jets)
{
    const JetFrame& F = v.frame();
    std::size_t n = F.independent().size();
    std::vector<Expr> q_terms{v.phi()};
    for (std::size_t i = 0; i < n; ++i)
        q_terms.push_back(-(v.xi()[i] * F.jet({i})));
    Expr Q = Expr::from_form(Expr::sum(q_terms).canonical());
    std::map<std::vector<std::size_t>, Expr> dq;
    dq.emplace(std::vector<std::size_t>{}, Q);
    std::function<const Expr&(const std::vector<std::size_t>&)> DQ = [&](const std::vector<std::size_t>& J) -> const Expr& {
        if (auto it = dq.find(J); it != dq.end())
            return it->second;
        std::vector<std::size_t> head(J.begin(), J.end() - 1);
        Expr r = F.total_derivative(DQ(head), J.back());
        return dq.emplace(J, r).first->second;
    };
    ProlongedField pf{v, {}};
    for (auto& J : jets) {
        std::vector<Expr> terms{DQ(J)};
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> Ji = J;
            Ji.push_back(i);
            std::sort(Ji.begin(), Ji.end());
            terms.push_back(v.xi()[i] * F.jet(Ji));
        }
        pf.coefficients.insert_or_assign(J, Expr::from_form(Expr::sum(terms).canonical()));
    }
    return pf;
}

} // namespace

Expr ProlongedField::apply(const Expr& f) const
{
    std::vector<Expr> terms{base.apply(f)};
    for (auto& [J, c] : coefficients)
        terms.push_back(c * base.frame().partial(f, base.frame().jet(J)));
    return Expr::from_form(Expr::sum(std::move(terms)).canonical());
}

ProlongedField prolong(const VectorField& v, int order)
{
    std::size_t n = v.frame().independent().size();
    std::vector<std::vector<std::size_t>> jets;
    std::function<void(std::vector<std::size_t>, std::size_t)> gen = [&](std::vector<std::size_t> J, std::size_t from) {
        if (!J.empty())
            jets.push_back(J);
        if (static_cast<int>(J.size()) == order)
            return;
        for (std::size_t i = from; i < n; ++i) {
            J.push_back(i);
            gen(J, i);
            J.pop_back();
        }
    };
    gen({}, 0);
    return prolong_jets(v, std::move(jets));
}

ProlongedField prolong2(const VectorField& v)
{
    if (v.frame().is_ode())
        return prolong(v, 2);
    std::vector<std::vector<std::size_t>> jets;
    std::size_t n = v.frame().independent().size();
    for (std::size_t i = 0; i < n; ++i)
        jets.push_back({i});
    if (n == 3) {
        jets.push_back({1, 1});
        jets.push_back({0, 1});
        jets.push_back({2, 2});
    } else {
        return prolong(v, 2);
    }
    return prolong_jets(v, std::move(jets));
}

Expr zk_equation()
{
    Expr u = Expr::jet("u"), ux = Expr::jet("u", {"x"});
    return Expr::jet("u", {"x", "t"}) - ux * ux - u * Expr::jet("u", {"x", "x"}) - Expr::jet("u", {"y", "y"});
}

Expr solve_for_pivot(const Expr& eq, const Expr& pivot)
{
    std::map<MonomialKey, CanonicalForm> c;
    try {
        c = collect_form(eq.canonical(), {atom_of(pivot)});
    } catch (const NotPolynomialInAtoms&) {
        throw NotSolvableForPivot("equation is not polynomial in the pivot");
    }
    for (auto& [k, v] : c)
        if (k[0] > 1)
            throw NotSolvableForPivot("equation is nonlinear in the pivot");
    auto a = c.find({1});
    if (a == c.end())
        throw NotSolvableForPivot("pivot does not occur in the equation");
    CanonicalForm b = c.count({0}) ? c.at({0}) : CanonicalForm();
    return Expr::from_form(-b / a->second);
}

bool is_symmetry(const VectorField& v, const Expr& equation, const Expr& pivot)
{
    Expr solved = solve_for_pivot(equation, pivot);
    auto jets = jets_in(equation, v.frame());
    Expr image = prolong_jets(v, jets).apply(equation);
    return is_zero(substitute(image, {{pivot, solved}}));
}

bool is_symmetry(const VectorField& v, const Expr& equation)
{
    const JetFrame& F = v.frame();
    if (F.is_ode()) {
        auto jets = jets_in(equation, F);
        if (jets.empty())
            throw NotSolvableForPivot("equation has no derivative of the dependent variable");
        std::size_t top = 0;
        for (auto& J : jets)
            top = std::max(top, J.size());
        return is_symmetry(v, equation, F.jet(std::vector<std::size_t>(top, 0)));
    }
    if (F.independent().size() == 3)
        return is_symmetry(v, equation, F.jet({0, 1}));
    throw NotSolvableForPivot("no default pivot for this frame");
}

} // namespace liereduce
