// Acceptance run: one line per criterion, PASS / RED-KNOWN / FAIL.
// RED-KNOWN means every deviation from the printed values is listed in the known-items file
// and at least one of them is a misprint that keeps the criterion from holding as stated.
// The process fails only on FAIL: a check that does not hold, a missed threshold, or a
// deviation set that differs from the documented one in either direction.

#include "twistcalc/geometry.hpp"
#include "twistcalc/quadrics.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace twistcalc;

namespace {

struct Known {
    std::string kind;  // open-question or red
};

std::map<int, std::map<std::string, Known>> load_known(const std::string& path) {
    std::map<int, std::map<std::string, Known>> out;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string num, kind, key;
        std::getline(ls, num, '\t');
        std::getline(ls, kind, '\t');
        std::getline(ls, key);
        if (kind != "open-question" && kind != "red") throw std::runtime_error("bad known-items line: " + line);
        out[std::stoi(num)][key] = {kind};
    }
    return out;
}

int leading_int(const std::string& s) {
    try {
        return std::stoi(s);
    } catch (...) {
        return 0;
    }
}

struct Criterion {
    int number = 0;
    std::string title;
    int checks = 0;
    std::vector<std::string> fails;
    std::set<std::string> deviations;
    std::vector<std::string> notes;

    void absorb(const Report& r, const std::function<bool(const ReportEntry&)>& keep = {}) {
        for (auto& e : r.entries()) {
            if (keep && !keep(e)) continue;
            ++checks;
            std::string key = e.anchor + " | " + e.id;
            if (e.status == Status::Fail) fails.push_back(key);
            if (e.status == Status::Discrepancy) deviations.insert(key);
        }
    }
    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) fails.push_back(what);
    }
};

struct FamilyRun {
    QuadricFamily fam;
    std::vector<std::pair<std::string, Twist>> twists;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <known-items file> [--list]\n";
        return 2;
    }
    const bool list = argc > 2 && std::string(argv[2]) == "--list";
    auto known = load_known(argv[1]);
    auto t0 = std::chrono::steady_clock::now();

    std::vector<FamilyRun> runs;
    for (const char* id : {"a", "b", "c", "d", "e", "f", "g", "h"}) {
        FamilyRun run{build_family(id), {}};
        for (auto& tid : run.fam.twist_ids()) run.twists.emplace_back(tid, build_twist(run.fam, tid));
        runs.push_back(std::move(run));
    }
    int twist_count = 0;
    for (auto& r : runs) twist_count += static_cast<int>(r.twists.size());

    std::vector<Criterion> cs(9);
    const char* titles[] = {"golden tables",
                            "twisted Leibniz rules and antipodes",
                            "star associativity",
                            "centrality of f and broken control",
                            "Hilbert-Poincare ranks up to degree 4",
                            "circular cylinder geometry",
                            "circular hyperboloid geometry",
                            "twisted involutions",
                            "classical limit"};
    for (int k = 0; k < 9; ++k) {
        cs[k].number = k + 1;
        cs[k].title = titles[k];
    }
    auto is_involution = [](const ReportEntry& e) { return e.anchor.find("involutions") != std::string::npos; };

    int min_assoc = 1 << 30, classical_samples = 0;
    for (auto& [fam, twists] : runs) {
        int assoc = 0;
        for (auto& [tid, T] : twists) {
            Report tables = verify_family_tables(fam, tid, false);
            cs[0].absorb(tables);
            cs[0].absorb(quotient_relations_check(fam, tid));
            cs[1].absorb(coproduct_checks(fam, tid));
            Report as = associativity_check(fam, T);
            cs[2].absorb(as);
            for (auto& e : as.entries()) assoc += leading_int(e.expected);
            cs[3].absorb(centrality_check(fam, T));
            cs[4].absorb(hilbert_dims_check(fam, T, 4));
            cs[7].absorb(tables, is_involution);
            cs[7].absorb(involution_checks(fam, T));
            Report cl = classical_limit_check(fam, T, 100, 7);
            cs[8].absorb(cl);
            for (auto& e : cl.entries()) classical_samples += leading_int(e.expected);
        }
        min_assoc = std::min(min_assoc, assoc);
        cs[2].require(assoc >= 1000, "family " + fam.id + ": only " + std::to_string(assoc) + " associativity triples");
    }
    cs[2].notes.push_back(std::to_string(twist_count) + " twists, at least " + std::to_string(min_assoc) +
                          " triples per family");
    cs[8].require(classical_samples >= 500, "only " + std::to_string(classical_samples) + " classical-limit samples");
    cs[8].notes.push_back(std::to_string(classical_samples) + " sampled assertions");

    // the control twist is not tangent to the quadric: its centrality check must fail
    {
        auto a = build_family("a");
        Twist control = centrality_control_twist(a);
        Report ctl = centrality_check(a, control);
        cs[3].require(!ctl.ok(), "the non-tangent control twist passes centrality");
        cs[3].notes.push_back("control twist fails as intended");
    }

    {
        Report cyl = cylinder_report(Rational(1, 2));
        cs[5].absorb(cyl);
    }
    for (int c : {1, -1}) {
        Report hyp = hyperboloid_report(Rational(c));
        cs[6].absorb(hyp);
        int gstar = 0, nablaf = 0, gauss = 0;
        for (auto& e : hyp.entries()) {
            if (e.id.rfind("g*(", 0) == 0) ++gstar;
            if (e.id.rfind("nabla^F_", 0) == 0) ++nablaf;
            if (e.id.rfind("twisted Gauss equation", 0) == 0) gauss = leading_int(e.expected);
        }
        std::string tag = "c = " + std::to_string(c) + ": ";
        cs[6].require(gstar == 9, tag + "expected 9 twisted metric entries");
        cs[6].require(nablaf == 9, tag + "expected 9 twisted connection entries");
        cs[6].require(gauss == 81, tag + "expected 81 Gauss 4-tuples");
    }
    cs[6].absorb(hyperboloid_frame_report());

    if (list) {
        for (auto& c : cs)
            for (auto& key : c.deviations) {
                auto it = known[c.number].find(key);
                std::cout << c.number << '\t' << (it == known[c.number].end() ? "red" : it->second.kind) << '\t' << key
                          << "\n";
            }
        return 0;
    }

    bool any_fail = false;
    for (auto& c : cs) {
        auto& doc = known[c.number];
        std::vector<std::string> undocumented, vanished;
        bool red = false;
        for (auto& key : c.deviations) {
            auto it = doc.find(key);
            if (it == doc.end())
                undocumented.push_back(key);
            else if (it->second.kind == "red")
                red = true;
        }
        for (auto& [key, k] : doc)
            if (!c.deviations.count(key)) vanished.push_back(key);
        const char* verdict = "PASS";
        if (!c.fails.empty() || !undocumented.empty() || !vanished.empty())
            verdict = "FAIL";
        else if (red)
            verdict = "RED-KNOWN";
        if (std::string(verdict) == "FAIL") any_fail = true;

        std::cout << "[" << verdict << "] criterion " << c.number << " (" << c.title << "): " << c.checks << " checks, "
                  << c.fails.size() << " failed, " << c.deviations.size() << " documented deviations";
        for (auto& n : c.notes) std::cout << "; " << n;
        std::cout << "\n";
        for (auto& f : c.fails) std::cout << "    failed: " << f << "\n";
        for (auto& u : undocumented) std::cout << "    undocumented deviation: " << u << "\n";
        for (auto& v : vanished) std::cout << "    documented deviation no longer observed: " << v << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "acceptance finished in " << static_cast<int>(secs + 0.5) << " s: "
              << (any_fail ? "FAIL" : "no criterion failed") << "\n";
    return any_fail ? 1 : 0;
}
