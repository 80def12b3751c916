#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "revivalkit/bivariate_krawtchouk.hpp"
#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/combinatorics.hpp"
#include "revivalkit/errors.hpp"
#include "revivalkit/hamming_scheme.hpp"
#include "revivalkit/ordered_hamming.hpp"
#include "revivalkit/orthopoly.hpp"
#include "revivalkit/spectral_design.hpp"
#include "timespec.hpp"

namespace revivalkit::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string source;
    std::string file;
    int n = 0;
    double beta = 1.0;
    double delta = 0.0;
    bool has_delta = false;
    std::string T;
    std::string chain = "krawtchouk";
    std::string couplings_file;
    int site = 0;
    bool lattice = false;
    double alpha = 1.0;
    std::string times;
    std::string format = "json";
    std::string output;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::string target;
};

json header(const char* command)
{
    json j;
    j["tool"] = "revivalkit";
    j["version"] = kVersion;
    j["command"] = command;
    return j;
}

std::vector<double> to_vector(std::span<const double> s)
{
    return {s.begin(), s.end()};
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::vector<double> numbers_from(const json& j, const char* key, const std::string& path)
{
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains(key)) {
            throw DomainError("'" + path + "' has no \"" + key + "\" array");
        }
        arr = &j.at(key);
    }
    if (!arr->is_array()) {
        throw DomainError("'" + path + "': \"" + key + "\" must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : *arr) {
        if (!v.is_number()) {
            throw DomainError("'" + path + "': \"" + key + "\" must be an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

void require_delta(const Options& o)
{
    if (!o.has_delta) {
        throw DomainError("--delta is required for this chain");
    }
}

/// Chain from a named family.
RecurrenceCoefficients named_chain(const std::string& kind, const Options& o)
{
    if (kind == "krawtchouk") {
        return krawtchouk_chain(o.n, o.beta);
    }
    if (kind == "para") {
        require_delta(o);
        if (o.n % 2 == 1) {
            return para_krawtchouk_chain({o.n, o.beta, o.delta});
        }
        return reconstruct_jacobi(bilattice_spectrum(o.n, o.beta, o.delta));
    }
    if (kind == "bilattice") {
        require_delta(o);
        return reconstruct_jacobi(bilattice_spectrum(o.n, o.beta, o.delta));
    }
    throw DomainError("unknown chain '" + kind + "'");
}

RecurrenceCoefficients chain_from_file(const std::string& path)
{
    const json j = read_json_file(path);
    std::vector<double> J = numbers_from(j, "couplings", path);
    std::vector<double> B;
    if (j.is_object() && j.contains("fields")) {
        B = numbers_from(j, "fields", path);
    } else {
        B.assign(J.size() + 1, 0.0);
    }
    return RecurrenceCoefficients(std::move(J), std::move(B));
}

void emit(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.output);
    if (!file) {
        throw DomainError("cannot write '" + o.output + "'");
    }
    file << text;
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

std::string format_real(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

json fr_json(const FRCheck& check, double T)
{
    json j;
    j["time"] = T;
    j["accepted"] = static_cast<bool>(check);
    j["max_deviation"] = check.max_deviation;
    if (check) {
        const FRCertificate& c = *check.certificate;
        j["phase"] = c.phase;
        j["angle"] = c.angle;
        j["mu"] = {c.mu.real(), c.mu.imag()};
        j["nu"] = {c.nu.real(), c.nu.imag()};
        j["pst"] = c.is_pst();
    } else {
        j["violating_index"] = check.violating_index;
    }
    return j;
}

int cmd_design(const Options& o, std::ostream& out)
{
    json doc = header("design");
    json config;
    config["source"] = o.source;

    std::optional<Spectrum> given;
    RecurrenceCoefficients coeffs = [&]() {
        if (o.source == "bilattice-file") {
            if (o.file.empty()) {
                throw DomainError("bilattice-file needs a JSON file argument");
            }
            config["file"] = o.file;
            given.emplace(numbers_from(read_json_file(o.file), "spectrum", o.file));
            return reconstruct_jacobi(*given);
        }
        config["n"] = o.n;
        config["beta"] = o.beta;
        if (o.has_delta) {
            config["delta"] = o.delta;
        }
        return named_chain(o.source, o);
    }();
    if (!o.T.empty()) {
        config["T"] = o.T;
    }
    doc["config"] = config;

    const EigenSystem sys = eigendecompose(coeffs);
    const Spectrum spectrum = given ? *given : Spectrum(std::vector<double>(sys.values.data(), sys.values.data() + sys.values.size()));
    doc["N"] = coeffs.degree();
    doc["couplings"] = to_vector(coeffs.couplings());
    doc["fields"] = to_vector(coeffs.fields());
    doc["spectrum"] = to_vector(spectrum.points());
    doc["mirror_symmetric"] = mirror_symmetric(coeffs, 1e-8);
    if (!o.T.empty()) {
        const double T = parse_real(o.T);
        doc["fr_certificate"] = fr_json(check_fr_condition(spectrum, T), T);
    }
    emit(o, dump(doc), out);
    return kOk;
}

struct AmplitudeRow {
    double time;
    int i;
    int j;
    std::complex<double> value;
};

/// Writes rows grouped by time; fails with exit 3 if a time's total
/// probability deviates from 1 by more than tol.
int write_amplitudes(const Options& o, json doc, const std::vector<double>& times,
                     const std::vector<std::vector<AmplitudeRow>>& rows, std::ostream& out, std::ostream& err)
{
    std::vector<double> norms;
    double worst = 0.0;
    for (const auto& slice : rows) {
        double total = 0.0;
        for (const auto& r : slice) {
            total += std::norm(r.value);
        }
        norms.push_back(total);
        worst = std::max(worst, std::abs(total - 1.0));
    }

    if (o.format == "csv") {
        std::ostringstream s;
        s << "time,i,j,re,im,abs2,norm\n";
        for (std::size_t k = 0; k < rows.size(); ++k) {
            for (const auto& r : rows[k]) {
                s << format_real(r.time) << ',' << r.i << ',' << r.j << ',' << format_real(r.value.real()) << ','
                  << format_real(r.value.imag()) << ',' << format_real(std::norm(r.value)) << ','
                  << format_real(norms[k]) << '\n';
            }
        }
        emit(o, s.str(), out);
    } else {
        json slices = json::array();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            json slice;
            slice["time"] = times[k];
            slice["norm"] = norms[k];
            json amps = json::array();
            for (const auto& r : rows[k]) {
                amps.push_back({{"i", r.i}, {"j", r.j}, {"re", r.value.real()}, {"im", r.value.imag()}, {"abs2", std::norm(r.value)}});
            }
            slice["amplitudes"] = std::move(amps);
            slices.push_back(std::move(slice));
        }
        doc["max_norm_deviation"] = worst;
        doc["slices"] = std::move(slices);
        emit(o, dump(doc), out);
    }
    if (worst > o.tol) {
        err << "error: total probability deviates from 1 by " << worst << " (tolerance " << o.tol << ")\n";
        return kInvariantFailure;
    }
    return kOk;
}

std::vector<double> required_times(const Options& o)
{
    const auto times = parse_times(o.times);
    if (times.empty()) {
        throw DomainError("time list is empty");
    }
    return times;
}

void check_format(const Options& o)
{
    if (o.format != "json" && o.format != "csv") {
        throw DomainError("--format must be json or csv");
    }
}

std::vector<std::vector<AmplitudeRow>> grid_rows(const ordered::AmplitudeGrid& grid)
{
    std::vector<std::vector<AmplitudeRow>> rows;
    for (std::size_t k = 0; k < grid.times.size(); ++k) {
        std::vector<AmplitudeRow> slice;
        for (std::size_t s = 0; s < grid.sites.size(); ++s) {
            slice.push_back({grid.times[k], grid.sites[s].i, grid.sites[s].j, grid.values[k](static_cast<Eigen::Index>(s))});
        }
        rows.push_back(std::move(slice));
    }
    return rows;
}

int cmd_evolve(const Options& o, std::ostream& out, std::ostream& err)
{
    check_format(o);
    const auto times = required_times(o);
    json doc = header("evolve");
    json config;
    config["times"] = o.times;
    config["format"] = o.format;
    config["tol"] = o.tol;

    if (o.lattice) {
        config["lattice"] = true;
        config["n"] = o.n;
        config["alpha"] = o.alpha;
        config["beta"] = o.beta;
        doc["config"] = config;
        const auto grid = ordered::lattice_amplitudes(o.n, o.alpha, o.beta, times);
        return write_amplitudes(o, doc, times, grid_rows(grid), out, err);
    }

    const RecurrenceCoefficients coeffs = [&]() {
        if (!o.couplings_file.empty()) {
            config["couplings_file"] = o.couplings_file;
            return chain_from_file(o.couplings_file);
        }
        config["chain"] = o.chain;
        config["n"] = o.n;
        config["beta"] = o.beta;
        if (o.has_delta) {
            config["delta"] = o.delta;
        }
        return named_chain(o.chain, o);
    }();
    if (o.site < 0 || o.site > coeffs.degree()) {
        throw DomainError("source site " + std::to_string(o.site) + " outside 0.." + std::to_string(coeffs.degree()));
    }
    config["source"] = o.site;
    doc["config"] = config;

    const SpectralPropagator prop = make_propagator(coeffs);
    std::vector<std::vector<AmplitudeRow>> rows;
    for (double t : times) {
        const Eigen::VectorXcd a = prop.column(t, o.site);
        std::vector<AmplitudeRow> slice;
        for (int n = 0; n <= coeffs.degree(); ++n) {
            slice.push_back({t, n, 0, a(n)});
        }
        rows.push_back(std::move(slice));
    }
    return write_amplitudes(o, doc, times, rows, out, err);
}

int cmd_amplitude2d(const Options& o, std::ostream& out, std::ostream& err)
{
    check_format(o);
    const auto times = required_times(o);
    json doc = header("amplitude2d");
    doc["config"] = {{"n", o.n}, {"alpha", o.alpha}, {"beta", o.beta}, {"times", o.times}, {"format", o.format}, {"tol", o.tol}};
    const auto grid = ordered::closed_form_grid(o.n, o.alpha, o.beta, times);
    return write_amplitudes(o, doc, times, grid_rows(grid), out, err);
}

json check(const char* name, double value, double tol)
{
    return {{"name", name}, {"value", value}, {"tolerance", tol}, {"passed", value <= tol}};
}

json exact_check(const char* name, std::int64_t deviation)
{
    return {{"name", name}, {"value", deviation}, {"tolerance", 0}, {"passed", deviation == 0}};
}

void require_cap(int n, int cap, const std::string& target)
{
    if (n < 1 || n > cap) {
        throw DomainError("verify " + target + " needs 1 <= N <= " + std::to_string(cap));
    }
}

json verify_hamming(int N, std::uint64_t seed)
{
    require_cap(N, hamming::kMaxBoseMesnerDegree, "hamming");
    json checks = json::array();
    checks.push_back(exact_check("bose_mesner", hamming::verify_bose_mesner(N).max_deviation));
    checks.push_back(check("krawtchouk_eigenvalues", hamming::krawtchouk_eigenvalue_check(N, seed).max_residual, 1e-8));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> time(0.0, std::numbers::pi);
    double deviation = 0.0;
    double leakage = 0.0;
    for (int k = 0; k < 3; ++k) {
        const auto r = hamming::projection_equivalence(N, time(rng));
        deviation = std::max(deviation, r.max_deviation);
        leakage = std::max(leakage, r.leakage);
    }
    checks.push_back(check("projection_deviation", deviation, 1e-9));
    checks.push_back(check("projection_leakage", leakage, 1e-9));
    return checks;
}

json verify_ordered(int N, std::uint64_t seed)
{
    require_cap(N, ordered::kMaxBoseMesnerDegree, "ordered");
    json checks = json::array();
    checks.push_back(exact_check("bose_mesner", ordered::verify_ordered_bose_mesner(N).max_deviation));

    std::int64_t card = 0;
    for (const auto& [i, j] : bivariate::triangle(N)) {
        card = std::max<std::int64_t>(card, std::abs(static_cast<std::int64_t>(ordered::column_cardinality(N, i, j))
                                                     - static_cast<std::int64_t>(ordered::count_words_of_shape(N, i, j))));
    }
    checks.push_back(exact_check("column_cardinality", card));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    std::uniform_real_distribution<double> time(0.0, std::numbers::pi / 2);
    double deviation = 0.0;
    double leakage = 0.0;
    double spectral = 0.0;
    double closed = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double a = weight(rng);
        const double b = weight(rng);
        const double t = time(rng);
        const auto r = ordered::project_ordered_walk(N, a, b, t);
        deviation = std::max(deviation, r.max_deviation);
        leakage = std::max(leakage, r.leakage);

        const auto op = ordered::triangle_hamiltonian(N, a, b);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix, Eigen::EigenvaluesOnly);
        Eigen::VectorXd predicted = op.predicted_eigenvalues();
        std::sort(predicted.data(), predicted.data() + predicted.size());
        spectral = std::max(spectral, (es.eigenvalues() - predicted).cwiseAbs().maxCoeff());

        const std::vector<double> ts{t};
        const auto lattice = ordered::lattice_amplitudes(N, a, b, ts);
        const auto formula = ordered::closed_form_grid(N, a, b, ts);
        closed = std::max(closed, (lattice.values[0] - formula.values[0]).cwiseAbs().maxCoeff());
    }
    checks.push_back(check("projection_deviation", deviation, 1e-8));
    checks.push_back(check("projection_leakage", leakage, 1e-8));
    checks.push_back(check("triangle_eigenvalues", spectral, 1e-9));
    checks.push_back(check("closed_form_vs_dynamics", closed, 1e-9));
    return checks;
}

json verify_bivariate(int N, std::uint64_t seed)
{
    require_cap(N, bivariate::kMaxSevenTermDegree, "bivariate");
    json checks = json::array();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    double p = unit(rng);
    double q = unit(rng) * (1.0 - p);

    const bivariate::TratnikParams params{N, p, q};
    const auto g = bivariate::GriffithsParams::tratnik(p, q);
    double agreement = 0.0;
    const auto sites = bivariate::triangle(N);
    for (const auto& idx : sites) {
        for (const auto& pt : sites) {
            const double t = bivariate::tratnik_eval(idx, pt, params);
            const double gr = bivariate::griffiths_eval(idx, pt, g, N);
            agreement = std::max(agreement, std::abs(t - gr) / std::max(1.0, std::abs(gr)));
        }
    }
    checks.push_back(check("tratnik_griffiths", agreement, 1e-10));
    checks.push_back(check("gram_identity", bivariate::orthonormal_gram_deviation(N), 1e-9));
    checks.push_back(check("tratnik_recurrences", bivariate::verify_tratnik_recurrences(params).max_residual, 1e-10));
    checks.push_back(check("hermitian_recurrence", bivariate::verify_hermitian_recurrence(N, 1.0, 2.0).max_residual, 1e-10));

    double seven = 0.0;
    for (int k = 0; k < 5; ++k) {
        seven = std::max(seven, bivariate::verify_seven_term(bivariate::Rotation3::random(rng), N).max_residual);
    }
    checks.push_back(check("seven_term", seven, 1e-8));

    std::uniform_real_distribution<double> st(-1.0, 1.0);
    double gen = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double s = st(rng);
        const double t = st(rng);
        for (const auto& idx : sites) {
            gen = std::max(gen, bivariate::generating_function_check(params, idx, s, t).max_residual);
        }
    }
    checks.push_back(check("generating_function", gen, 1e-9));
    return checks;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    json doc = header("verify");
    doc["config"] = {{"target", o.target}, {"n", o.n}, {"seed", o.seed}};
    json checks;
    if (o.target == "hamming") {
        checks = verify_hamming(o.n, o.seed);
    } else if (o.target == "ordered") {
        checks = verify_ordered(o.n, o.seed);
    } else if (o.target == "bivariate") {
        checks = verify_bivariate(o.n, o.seed);
    } else {
        throw DomainError("unknown verify target '" + o.target + "'");
    }
    bool all = true;
    for (const auto& c : checks) {
        all = all && c["passed"].get<bool>();
    }
    doc["checks"] = checks;
    doc["passed"] = all;
    emit(o, dump(doc), out);
    return all ? kOk : kInvariantFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spin-chain and quantum-walk state transfer toolkit", "revivalkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    auto* design = app.add_subcommand("design", "Design a chain and report J, B, spectrum and FR data");
    design->add_option("source", o.source, "krawtchouk | para | bilattice | bilattice-file")
        ->required()
        ->check(CLI::IsMember({"krawtchouk", "para", "bilattice", "bilattice-file"}));
    design->add_option("file", o.file, "JSON spectrum file (bilattice-file)");
    design->add_option("--n", o.n, "Chain degree N (sites 0..N)");
    design->add_option("--beta", o.beta, "Coupling scale");
    design->add_option("--delta", o.delta, "Bi-lattice offset")->each([&](const std::string&) { o.has_delta = true; });
    design->add_option("--T", o.T, "Revival time to certify, decimal or pi/k");
    design->add_option("--output", o.output, "Write to file instead of stdout");

    auto* evolve = app.add_subcommand("evolve", "Amplitudes of a chain or of the triangular lattice");
    evolve->add_option("--chain", o.chain, "krawtchouk | para | bilattice")
        ->check(CLI::IsMember({"krawtchouk", "para", "bilattice"}));
    evolve->add_option("--couplings-file", o.couplings_file, "JSON file with couplings (and optional fields)");
    evolve->add_option("--n", o.n, "Degree N");
    evolve->add_option("--beta", o.beta, "Chain scale, or A(0,1) weight with --lattice");
    evolve->add_option("--delta", o.delta, "Bi-lattice offset")->each([&](const std::string&) { o.has_delta = true; });
    evolve->add_option("--source", o.site, "Initial site of the chain");
    evolve->add_flag("--lattice", o.lattice, "Evolve the triangular lattice from (0,0)");
    evolve->add_option("--alpha", o.alpha, "A(1,0) weight with --lattice");
    evolve->add_option("--times", o.times, "Times: list and/or start:stop:step, pi/k accepted")->required();
    evolve->add_option("--format", o.format, "json | csv");
    evolve->add_option("--tol", o.tol, "Allowed deviation of the total probability from 1");
    evolve->add_option("--output", o.output, "Write to file instead of stdout");

    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("target", o.target, "hamming | ordered | bivariate")
        ->required()
        ->check(CLI::IsMember({"hamming", "ordered", "bivariate"}));
    verify->add_option("--n", o.n, "Degree N")->required();
    verify->add_option("--seed", o.seed, "Seed for random draws");
    verify->add_option("--output", o.output, "Write to file instead of stdout");

    auto* amp = app.add_subcommand("amplitude2d", "Closed-form lattice amplitudes f_(k,l)(t)");
    amp->add_option("--n", o.n, "Degree N")->required();
    amp->add_option("--alpha", o.alpha, "A(1,0) weight");
    amp->add_option("--beta", o.beta, "A(0,1) weight");
    amp->add_option("--times", o.times, "Times: list and/or start:stop:step, pi/k accepted")->required();
    amp->add_option("--format", o.format, "json | csv");
    amp->add_option("--tol", o.tol, "Allowed deviation of the total probability from 1");
    amp->add_option("--output", o.output, "Write to file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (design->parsed()) {
            return cmd_design(o, out);
        }
        if (evolve->parsed()) {
            return cmd_evolve(o, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out);
        }
        return cmd_amplitude2d(o, out, err);
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << " (coupling index " << e.index() << ")\n";
        return kInvariantFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace revivalkit::cli
