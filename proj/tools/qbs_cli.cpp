// Batch front-end: load a datum file, run a verification verb, emit a report
// in text or JSON. Exit code 0 iff every requested check passed; nonzero
// codes distinguish the error classes (see exitFor below).

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbs/center.hpp"
#include "qbs/datum_io.hpp"
#include "qbs/killing.hpp"
#include "qbs/parse.hpp"
#include "qbs/render.hpp"
#include "qbs/rmatrix.hpp"

using namespace qbs;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitParse = 4;
constexpr int kExitDepth = 5;
constexpr int kExitDomain = 6;
constexpr int kExitInternal = 7;

struct Check {
    std::string name;
    std::string ref;  // which verified statement this check instantiates
    bool pass;
    std::string detail;
};

struct Report {
    std::string verb;
    std::string datumHash;
    long depth = 0;
    std::vector<Check> checks;

    bool allPass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void emit(bool json, std::ostream& os) const {
        if (json) {
            nlohmann::ordered_json j;
            j["verb"] = verb;
            j["datum_hash"] = datumHash;
            j["depth"] = depth;
            j["checks"] = nlohmann::ordered_json::array();
            for (auto& c : checks)
                j["checks"].push_back({{"name", c.name},
                                       {"paper_ref", c.ref},
                                       {"pass", c.pass},
                                       {"detail", c.detail}});
            os << j.dump(2) << "\n";
        } else {
            os << "verb: " << verb << "\n";
            os << "datum: " << datumHash << "\n";
            os << "depth: " << depth << "\n";
            for (auto& c : checks)
                os << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.ref
                   << "]" << (c.detail.empty() ? "" : " " + c.detail) << "\n";
        }
    }
};

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string rootStr(const RootVector& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.n.size(); ++i)
        s += (i ? "," : "") + std::to_string(b.n[i]);
    return s + "]";
}

std::vector<RootVector> weightsUpTo(std::size_t rank, long maxHt) {
    std::vector<RootVector> out;
    for (long h = 0; h <= maxHt; ++h)
        for (auto& b : weightsOfHeight(rank, h)) out.push_back(b);
    return out;
}

AlgebraElement randomMonomial(Algebra& alg, std::mt19937& rng, int maxLen) {
    const Datum& d = alg.datum();
    std::uniform_int_distribution<int> len(1, maxLen), kind(0, 2),
        pickI(0, static_cast<int>(d.rank()) - 1), hv(-2, 2);
    AlgebraElement x = alg.one();
    int n = len(rng);
    for (int t = 0; t < n; ++t) {
        int i = pickI(rng);
        switch (kind(rng)) {
            case 0:
                x = alg.multiply(x, alg.gen(Side::E, i, 1));
                break;
            case 1:
                x = alg.multiply(x, alg.gen(Side::F, i, 1));
                break;
            default: {
                CoweightVector h(d.rank());
                h.h[static_cast<std::size_t>(i)] = hv(rng);
                x = alg.multiply(x, alg.toral(h));
            }
        }
    }
    return x;
}

// ---- verb bodies; each appends checks to the report ----

void runValidate(const Datum& d, Report& rep) {
    rep.checks.push_back({"datum axioms", "Borcherds-Cartan datum validation",
                          true,
                          "rank " + std::to_string(d.rank()) + ", all axioms hold"});
}

void runDims(Algebra& alg, long depth, Report& rep) {
    std::string table;
    for (auto& beta : weightsUpTo(alg.datum().rank(), depth))
        table += rootStr(beta) + "=" + std::to_string(alg.registry().dim(beta)) + " ";
    rep.checks.push_back({"half-algebra dimensions",
                          "triangular decomposition weight spaces", true, table});
}

void runGram(Algebra& alg, long depth, Report& rep) {
    for (auto& beta : weightsUpTo(alg.datum().rank(), depth)) {
        std::size_t n = alg.registry().dim(beta);
        if (n == 0) continue;
        bool ok = gramBlockInvertible(alg.registry().at(beta));
        rep.checks.push_back({"gram block " + rootStr(beta),
                              "pairing nondegeneracy on the quotient halves", ok,
                              "invertible " + std::to_string(n) + "x" +
                                  std::to_string(n) + " pivot block"});
    }
}

void runPair(Algebra& alg, const std::string& left, const std::string& right,
             Report& rep) {
    Scalar v = alg.hopfPair(parseElement(alg, left), parseElement(alg, right));
    rep.checks.push_back({"pairing value", "Drinfeld pairing evaluation", true,
                          scalarStr(v, alg.datum().rootOrder())});
}

void runMul(Algebra& alg, const std::string& left, const std::string& right,
            Report& rep) {
    AlgebraElement p =
        alg.multiply(parseElement(alg, left), parseElement(alg, right));
    rep.checks.push_back({"normal form product", "triangular normal form", true,
                          elementStr(p, alg.datum().rootOrder())});
}

void runHopfTest(Algebra& alg, Report& rep) {
    const Datum& d = alg.datum();
    std::vector<AlgebraElement> sample;
    for (std::size_t i = 0; i < d.rank(); ++i)
        for (int k = 1; k <= static_cast<int>(d.charge()[i]); ++k) {
            sample.push_back(alg.gen(Side::E, i, k));
            sample.push_back(alg.gen(Side::F, i, k));
        }
    CoweightVector h(d.rank());
    h.h[0] = 1;
    sample.push_back(alg.toral(h));
    std::mt19937 rng(7);
    for (int t = 0; t < 10; ++t) sample.push_back(randomMonomial(alg, rng, 3));

    bool coassoc = true, counit = true, antipode = true;
    for (auto& x : sample) {
        TensorElement dx = alg.coproduct(x);
        if (alg.deltaAtSlot(dx, 0) != alg.deltaAtSlot(dx, 1)) coassoc = false;
        TensorElement idT = alg.tensorOf({x});
        if (alg.counitAtSlot(dx, 0) != idT || alg.counitAtSlot(dx, 1) != idT)
            counit = false;
        AlgebraElement want = alg.one().scaled(alg.counit(x));
        if (alg.contract(alg.antipodeAtSlot(dx, 0)) != want ||
            alg.contract(alg.antipodeAtSlot(dx, 1)) != want)
            antipode = false;
    }
    std::string det = std::to_string(sample.size()) + " sample elements";
    rep.checks.push_back({"coassociativity", "coproduct coassociativity axiom",
                          coassoc, det});
    rep.checks.push_back({"counit", "counit axiom", counit, det});
    rep.checks.push_back({"antipode", "antipode convolution axiom", antipode, det});
}

void runChar(Algebra& alg, const WeightFunctional& lam, long depth, Report& rep) {
    HighestWeightModule m = buildIrreducible(alg, lam, depth);
    auto formula = characterFormula(alg, lam, depth);
    bool ok = true;
    std::string table;
    for (auto& beta : weightsUpTo(alg.datum().rank(), depth)) {
        long fm = 0;
        if (auto it = formula.find(beta); it != formula.end()) fm = it->second;
        long md = static_cast<long>(m.dim(beta));
        if (fm != md) ok = false;
        if (md != 0 || fm != 0)
            table += rootStr(beta) + "=" + std::to_string(md) + " ";
    }
    rep.checks.push_back({"character formula vs module",
                          "alternating character sum equals module multiplicities",
                          ok, table});
}

void runCenterCheck(Algebra& alg, const std::string& expr, Report& rep) {
    AlgebraElement z = parseElement(alg, expr);
    rep.checks.push_back({"central element", "commutation with all generators",
                          isCentral(alg, z), ""});
}

void runHc(Algebra& alg, const std::string& expr, Report& rep) {
    const Datum& d = alg.datum();
    AlgebraElement z = parseElement(alg, expr);
    ToralElement xi = harishChandra(alg, z);
    std::string rendered;
    for (auto& [h, c] : xi.terms)
        rendered += (rendered.empty() ? "" : " + ") +
                    scalarStr(c, d.rootOrder()) + "*" + toralStr(h);
    if (rendered.empty()) rendered = "0";
    rep.checks.push_back({"toral projection",
                          "rho-shifted restriction to the toral subalgebra", true,
                          rendered});
    ImageConstraintReport rc = checkImageConstraints(d, xi);
    rep.checks.push_back({"Weyl invariance", "image invariance under reflections",
                          rc.weylInvariant, ""});
    rep.checks.push_back({"restricted support",
                          "image support in the admissible exponent lattice",
                          rc.restrictedSupport, ""});
}

void runFLambda(Algebra& alg, const WeightFunctional& lam, long depth,
                Report& rep) {
    const Datum& d = alg.datum();
    long D = d.rootOrder();
    CoweightVector h(d.rank());
    h.h[0] = 1;
    std::vector<AlgebraElement> span{alg.one(), alg.gen(Side::E, 0, 1),
                                     alg.gen(Side::F, 0, 1),
                                     alg.multiply(alg.gen(Side::F, 0, 1),
                                                  alg.gen(Side::E, 0, 1)),
                                     alg.toral(h)};
    bool ok = true;
    for (std::size_t i = 0; i < d.rank(); ++i)
        for (auto side : {Side::E, Side::F}) {
            AlgebraElement x = alg.gen(side, i, 1);
            for (auto& u : span)
                if (!fLambda(alg, lam, alg.ad(x, u), depth).isZero()) ok = false;
        }
    for (auto& u : span) {
        AlgebraElement conj = alg.ad(alg.toral(h), u);
        if (fLambda(alg, lam, conj, depth) != fLambda(alg, lam, u, depth))
            ok = false;
    }
    rep.checks.push_back(
        {"supertrace functional invariance",
         "twisted supertrace kills the augmentation-free adjoint image", ok,
         "f(1) = " + scalarStr(fLambda(alg, lam, alg.one(), depth), D)});
}

HighestWeightModule finiteModule(Algebra& alg, const WeightFunctional& lam,
                                 long depth) {
    HighestWeightModule m = buildIrreducible(alg, lam, depth);
    if (!m.exhausted())
        throw DepthExceeded("module does not close within the depth bound");
    return m;
}

void runRmat(Algebra& alg, const WeightFunctional& lam,
             const WeightFunctional& mu, long depth, Report& rep) {
    long D = alg.datum().rootOrder();
    HighestWeightModule v = finiteModule(alg, lam, depth - 1);
    HighestWeightModule w = finiteModule(alg, mu, depth - 1);
    std::vector<const HighestWeightModule*> mods{&v, &w};
    Matrix<Scalar> r = rMatrixAt(alg, mods, 0, 1);
    std::string entries;
    for (std::size_t a = 0; a < r.rows(); ++a)
        for (std::size_t b = 0; b < r.cols(); ++b)
            if (!r(a, b).isZero())
                entries += "R[" + std::to_string(a) + "][" + std::to_string(b) +
                           "]=" + scalarStr(r(a, b), D) + " ";
    rep.checks.push_back({"R operator block",
                          "weight-twisted quasi-R action on the tensor square",
                          true, entries});
    rep.checks.push_back({"R invertible", "two-sided inverse of the quasi-R element",
                          !r.det().isZero(), ""});
}

void runYbe(Algebra& alg, const WeightFunctional& lam, long depth, Report& rep) {
    HighestWeightModule m = finiteModule(alg, lam, depth - 1);
    std::vector<const HighestWeightModule*> mods{&m, &m, &m};
    Matrix<Scalar> r12 = rMatrixAt(alg, mods, 0, 1);
    Matrix<Scalar> r13 = rMatrixAt(alg, mods, 0, 2);
    Matrix<Scalar> r23 = rMatrixAt(alg, mods, 1, 2);
    Matrix<Scalar> diff = r12 * r13 * r23 - r23 * r13 * r12;
    std::size_t nonzero = 0, total = diff.rows() * diff.cols();
    for (std::size_t a = 0; a < diff.rows(); ++a)
        for (std::size_t b = 0; b < diff.cols(); ++b)
            if (!diff(a, b).isZero()) ++nonzero;
    rep.checks.push_back({"Yang-Baxter residual",
                          "braid relation for the R operator", nonzero == 0,
                          std::to_string(nonzero) + " nonzero residual entries / " +
                              std::to_string(total)});
}

void runAll(const Datum& dat, long depth, Report& rep) {
    Algebra alg(dat, depth);
    const Datum& d = alg.datum();
    runValidate(d, rep);
    runDims(alg, depth, rep);
    runGram(alg, depth, rep);
    runHopfTest(alg, rep);
    WeightFunctional lam(d.rank());
    for (std::size_t i = 0; i < d.rank(); ++i) lam.onH[i] = d.isReal(i) ? 2 : 1;
    if (isDominant(d, lam)) runChar(alg, lam, std::min(depth, 4L), rep);
    if (d.rank() == 1) {
        CasimirVariant variant;
        const CoweightVector* hp = nullptr;
        CoweightVector hd = CoweightVector::basisD(1, 0);
        if (d.a(0, 0) != 0 && !d.isOdd(0)) {
            variant = CasimirVariant::Even;
        } else if (d.a(0, 0) != 0) {
            variant = CasimirVariant::Odd;
        } else {
            variant = CasimirVariant::IsotropicOdd;
            hp = &hd;
        }
        AlgebraElement c = casimirRank1(alg, 0, variant, hp);
        rep.checks.push_back({"rank-1 casimir central",
                              "commutation with all generators",
                              isCentral(alg, c), ""});
        ImageConstraintReport rc = checkImageConstraints(d, harishChandra(alg, c));
        rep.checks.push_back({"casimir image Weyl invariance",
                              "image invariance under reflections",
                              rc.weylInvariant, ""});
        rep.checks.push_back({"casimir image support",
                              "image support in the admissible exponent lattice",
                              rc.restrictedSupport, ""});
        if (d.isFiniteType()) {
            WeightFunctional l2(1);
            l2.onH[0] = 2;
            runYbe(alg, l2, depth, rep);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suite for quantized Borcherds superalgebras"};
    std::string datumPath, verb, format = "text", lambdaSpec, muSpec, left, right,
                expr;
    long depth = 5;
    app.add_option("--datum", datumPath, "datum file (JSON)")->required();
    app.add_option("--verb", verb, "one of validate dims gram pair mul hopf-test char center-check hc flambda rmat ybe all")
        ->required();
    app.add_option("--depth", depth, "weight-height truncation")->check(CLI::NonNegativeNumber);
    app.add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--lambda", lambdaSpec, "highest weight, e.g. h1=1,d1=0");
    app.add_option("--mu", muSpec, "second highest weight for rmat");
    app.add_option("--left", left, "left element expression");
    app.add_option("--right", right, "right element expression");
    app.add_option("--expr", expr, "element expression");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    static const std::vector<std::string> verbs{
        "validate", "dims", "gram", "pair", "mul", "hopf-test", "char",
        "center-check", "hc", "flambda", "rmat", "ybe", "all"};
    if (std::find(verbs.begin(), verbs.end(), verb) == verbs.end()) {
        std::cerr << "unknown verb: " << verb << "\n";
        return kExitUsage;
    }

    auto needLambda = [&]() -> bool {
        return verb == "char" || verb == "flambda" || verb == "rmat" || verb == "ybe";
    };
    if (needLambda() && lambdaSpec.empty()) {
        std::cerr << "verb '" << verb << "' requires --lambda\n";
        return kExitUsage;
    }
    if ((verb == "pair" || verb == "mul") && (left.empty() || right.empty())) {
        std::cerr << "verb '" << verb << "' requires --left and --right\n";
        return kExitUsage;
    }
    if ((verb == "center-check" || verb == "hc") && expr.empty()) {
        std::cerr << "verb '" << verb << "' requires --expr\n";
        return kExitUsage;
    }

    Report rep;
    rep.verb = verb;
    rep.depth = depth;
    try {
        Datum dat = datumFromFile(datumPath);
        rep.datumHash = fnv1a(datumToJson(dat).dump());
        if (verb == "validate") {
            runValidate(dat, rep);
        } else if (verb == "all") {
            runAll(dat, depth, rep);
        } else {
            Algebra alg(dat, depth);
            WeightFunctional lam(dat.rank()), mu(dat.rank());
            if (!lambdaSpec.empty()) lam = parseWeight(dat.rank(), lambdaSpec);
            mu = muSpec.empty() ? lam : parseWeight(dat.rank(), muSpec);
            if (verb == "dims")
                runDims(alg, depth, rep);
            else if (verb == "gram")
                runGram(alg, depth, rep);
            else if (verb == "pair")
                runPair(alg, left, right, rep);
            else if (verb == "mul")
                runMul(alg, left, right, rep);
            else if (verb == "hopf-test")
                runHopfTest(alg, rep);
            else if (verb == "char")
                runChar(alg, lam, depth, rep);
            else if (verb == "center-check")
                runCenterCheck(alg, expr, rep);
            else if (verb == "hc")
                runHc(alg, expr, rep);
            else if (verb == "flambda")
                runFLambda(alg, lam, depth, rep);
            else if (verb == "rmat")
                runRmat(alg, lam, mu, depth, rep);
            else if (verb == "ybe")
                runYbe(alg, lam, depth, rep);
        }
    } catch (const ValidationError& e) {
        std::cerr << "datum validation failed [" << e.axiom << "]: " << e.what()
                  << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DepthExceeded& e) {
        std::cerr << "depth exceeded: " << e.what() << "\n";
        return kExitDepth;
    } catch (const ModuleNotExhausted& e) {
        std::cerr << "depth exceeded: " << e.what() << "\n";
        return kExitDepth;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }

    rep.emit(format == "json", std::cout);
    return rep.allPass() ? 0 : kExitCheckFailed;
}
