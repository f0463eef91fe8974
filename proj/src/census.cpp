#include "preper/census.hpp"

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace preper {

std::string labels_str(uint8_t labels) {
    std::string out;
    for (int i = 0; i <= 6; ++i) {
        if (labels & (1 << i)) {
            if (!out.empty()) out += "+";
            out += "E" + std::to_string(i);
        }
    }
    return out;
}

namespace {

const std::map<Rational, int>& e0_excess_table() {
    static const std::map<Rational, int> table{
        {Rational(0), 3},          {Rational(-1), 3},  {Rational(-2), 5},
        {Rational(1, 4), 2},       {Rational(-29, 16), 8},
    };
    return table;
}

bool is_nonzero_square(const Rational& r, Rational* root = nullptr) {
    if (r.sign() <= 0) return false;
    auto s = rational_square_root(r);
    if (!s) return false;
    if (root) *root = *s;
    return true;
}

} // namespace

uint8_t poonen_classify(const Rational& t, const Portrait& portrait, int excess,
                        bool* unclassified) {
    if (unclassified) *unclassified = false;
    auto& e0 = e0_excess_table();
    auto it = e0.find(t);
    if (it != e0.end()) {
        if (unclassified && excess != it->second) *unclassified = true;
        return LABEL_E0;
    }
    uint8_t labels = 0;
    Rational rho, sigma;
    bool e1 = is_nonzero_square(Rational(1, 4) - t, &rho);
    bool e2 = is_nonzero_square(Rational(-3, 4) - t, &sigma);
    bool e3 = portrait.has_cycle_of_length(3);
    bool e4 = portrait.has_type(1, 2);
    bool e5 = portrait.has_type(2, 2);
    bool e6 = e1 && e2;
    if (e1) labels |= LABEL_E1;
    if (e2) labels |= LABEL_E2;
    if (e3) labels |= LABEL_E3;
    if (e4) labels |= LABEL_E4;
    if (e5) labels |= LABEL_E5;
    if (e6) {
        labels |= LABEL_E6;
        // cross-check against the algebraic parametrization: mu = (1+rho)/sigma
        Rational mu = (Rational(1) + rho) / sigma;
        Rational mu2 = mu * mu;
        Rational expect = -(Rational(3) * mu2 * mu2 + Rational(10) * mu2 + Rational(3)) /
                          (Rational(4) * (mu2 - Rational(1)) * (mu2 - Rational(1)));
        if (expect != t) throw std::logic_error("E6 parametrization cross-check failed at t=" + t.str());
    }
    bool bad = false;
    if (e3 && (e1 || e2)) bad = true; // (E1 ∪ E2) ∩ E3 = ∅
    if (e4 && !e1) bad = true;        // E4 ⊆ E1
    if (e5 && !e2) bad = true;        // E5 ⊆ E2
    int expected = 4 * (int(e1) + int(e2)) + 2 * (int(e4) + int(e5)) + 6 * int(e3);
    if (excess != expected) bad = true;
    if (excess > 0 && labels == 0) bad = true;
    if (unclassified) *unclassified = bad;
    return labels;
}

CsvRowSink::CsvRowSink(std::ostream& os) : os_(os) {
    os_ << "t_num,t_den,height,count,excess,labels,max_cycle,bad_primes,method\n";
}

void CsvRowSink::accept(const CensusRow& row) {
    os_ << row.t.num().get_str() << ',' << row.t.den().get_str() << ','
        << height(row.t).get_str() << ',' << row.count << ',' << row.excess << ','
        << labels_str(row.labels) << ',' << row.max_cycle << ',';
    for (size_t i = 0; i < row.bad_primes.size(); ++i) {
        if (i) os_ << ';';
        os_ << row.bad_primes[i];
    }
    os_ << ',' << method_name(row.method) << '\n';
}

namespace {

struct BlockResult {
    std::vector<CensusRow> rows;
    long degenerate = 0;
    std::vector<std::string> fresh; // cache lines for rows computed this run
};

struct PortraitCache {
    bool enabled = false;
    std::string path;
    std::map<std::string, CensusRow> rows; // keyed by t string

    void load(const std::string& dir, const FamilyLift& fam, bool filters) {
        enabled = true;
        std::filesystem::create_directories(dir);
        path = dir + "/" + fam.name() + (filters ? ".f1" : ".f0") + ".jsonl";
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;
            CensusRow r;
            r.t = Rational::parse(j.at("t").get<std::string>());
            r.count = j.at("count").get<int>();
            r.excess = j.at("excess").get<int>();
            r.portrait_hash = j.at("hash").get<std::string>();
            r.labels = static_cast<uint8_t>(j.at("labels").get<int>());
            r.max_cycle = j.at("max_cycle").get<int>();
            r.unclassified = j.at("unclassified").get<bool>();
            r.method = j.at("method").get<int>() == 0 ? PreperMethod::TropicalFilter
                                                      : PreperMethod::ExhaustiveSearch;
            rows.emplace(r.t.str(), std::move(r));
        }
    }

    static std::string line_of(const CensusRow& r) {
        nlohmann::json j;
        j["t"] = r.t.str();
        j["count"] = r.count;
        j["excess"] = r.excess;
        j["hash"] = r.portrait_hash;
        j["labels"] = static_cast<int>(r.labels);
        j["max_cycle"] = r.max_cycle;
        j["unclassified"] = r.unclassified;
        j["method"] = r.method == PreperMethod::TropicalFilter ? 0 : 1;
        return j.dump();
    }
};

BlockResult compute_block(const FamilyLift& fam, long X, long b, const CensusOptions& opts,
                          const PortraitCache& cache) {
    BlockResult out;
    const int gamma_size = static_cast<int>(fam.gamma().size());
    const bool quadratic = fam.name() == "quadratic" && opts.classify;
    EngineOptions eopts;
    eopts.family = &fam;
    eopts.use_filters = opts.use_filters;
    eopts.candidate_cap = opts.candidate_cap;
    for (long a = -X; a <= X; ++a) {
        if (b > 1 && (a == 0 || std::gcd(std::labs(a), b) != 1)) continue;
        Rational t(a, b);
        if (fam.is_degenerate_at(t)) {
            ++out.degenerate;
            continue;
        }
        if (cache.enabled) {
            auto it = cache.rows.find(t.str());
            if (it != cache.rows.end()) {
                CensusRow row = it->second;
                row.bad_primes = bad_primes(fam.specialize(t));
                out.rows.push_back(std::move(row));
                continue;
            }
        }
        SpecializedMap m = fam.specialize(t);
        PrePerResult res;
        try {
            res = compute_preper(m, eopts);
        } catch (const resource_limit_error& e) {
            throw resource_limit_error(std::string(e.what()) + " at t = " + t.str());
        }
        CensusRow row;
        row.t = t;
        row.count = res.count;
        row.excess = res.count - gamma_size;
        if (row.excess < 0)
            throw std::logic_error("negative excess at t = " + t.str() +
                                   " (gamma not contained in portrait?)");
        row.portrait_hash = res.portrait.hash();
        row.max_cycle = res.portrait.max_cycle();
        row.bad_primes = bad_primes(m);
        row.method = res.method;
        if (quadratic) row.labels = poonen_classify(t, res.portrait, row.excess, &row.unclassified);
        if (cache.enabled) out.fresh.push_back(PortraitCache::line_of(row));
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace

CensusSummary run_census(const FamilyLift& fam, long X, const CensusOptions& opts, RowSink* sink) {
    if (X < 1) throw std::domain_error("run_census: X >= 1 required");
    CensusSummary s;
    s.family = fam.name();
    s.X = X;
    s.A = 0;
    s.R = 0;
    s.large_cycles[1] = {};
    s.large_cycles[2] = {};
    s.large_cycles[3] = {};

    PortraitCache cache;
    if (!opts.cache_dir.empty()) cache.load(opts.cache_dir, fam, opts.use_filters);
    std::ofstream cache_out;
    if (cache.enabled) cache_out.open(cache.path, std::ios::app);

    const int workers = std::max(1, opts.workers);
    std::mutex mu;
    std::condition_variable cv;
    std::map<long, BlockResult> done;
    std::atomic<long> next_b{1};
    long drained_b = 0;
    std::exception_ptr failure;

    auto worker_fn = [&]() {
        try {
            for (;;) {
                long b = next_b.fetch_add(1);
                if (b > X) return;
                {
                    // bound the reorder window so memory stays flat
                    std::unique_lock<std::mutex> lk(mu);
                    cv.wait(lk, [&] { return b <= drained_b + 8 * workers + 8 || failure; });
                    if (failure) return;
                }
                BlockResult r = compute_block(fam, X, b, opts, cache);
                std::lock_guard<std::mutex> lk(mu);
                done.emplace(b, std::move(r));
                cv.notify_all();
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!failure) failure = std::current_exception();
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);

    auto absorb = [&](const BlockResult& blk) {
        s.degenerate += blk.degenerate;
        if (cache.enabled)
            for (const auto& line : blk.fresh) cache_out << line << '\n';
        for (const auto& row : blk.rows) {
            s.rows += 1;
            s.A += row.count;
            s.R += row.excess;
            if (row.excess > 0) s.NE += 1;
            for (int l = 1; l <= 4; ++l)
                if (row.max_cycle > l) s.NZ[l] += 1;
            for (int i = 0; i <= 6; ++i)
                if (row.labels & (1 << i)) s.class_tallies[i] += 1;
            if (row.unclassified) s.unclassified += 1;
            for (int l = 1; l <= 3; ++l)
                if (row.max_cycle > l) s.large_cycles[l].push_back(row.t);
            if (sink) sink->accept(row);
        }
    };

    {
        std::unique_lock<std::mutex> lk(mu);
        for (long b = 1; b <= X; ++b) {
            cv.wait(lk, [&] { return done.count(b) > 0 || failure; });
            if (failure) break;
            BlockResult blk = std::move(done[b]);
            done.erase(b);
            drained_b = b;
            cv.notify_all();
            lk.unlock();
            absorb(blk);
            if (opts.progress && b % 100 == 0)
                std::cerr << "census " << fam.name() << ": denominator " << b << "/" << X << "\r";
            lk.lock();
        }
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    if (opts.progress) {
        std::cerr << "census " << fam.name() << ": done, " << s.rows << " rows, " << s.degenerate
                  << " degenerate\n";
    }
    s.identities = identity_check(s);
    return s;
}

IdentityReport identity_check(const CensusSummary& s) {
    IdentityReport rep;
    if (s.family != "quadratic" || s.X < 29) {
        rep.applicable = false;
        return rep;
    }
    rep.applicable = true;
    long n1 = s.class_tallies[1], n2 = s.class_tallies[2], n3 = s.class_tallies[3];
    long n4 = s.class_tallies[4], n5 = s.class_tallies[5], n6 = s.class_tallies[6];
    rep.ne_direct = s.NE;
    rep.ne_from_classes = 5 + n1 + n2 - n6 + n3;
    rep.r_direct = s.R;
    rep.r_from_classes = Int(21 + 4 * (n1 + n2) + 6 * n3 + 2 * (n4 + n5));
    rep.ne_ok = rep.ne_direct == rep.ne_from_classes;
    rep.r_ok = rep.r_direct == rep.r_from_classes;
    return rep;
}

const std::vector<Rational>& large_cycle_scan(const CensusSummary& s, int l) {
    auto it = s.large_cycles.find(l);
    if (it == s.large_cycles.end())
        throw std::domain_error("large_cycle_scan: l must be 1, 2, or 3");
    return it->second;
}

std::string summary_to_json(const CensusSummary& s) {
    nlohmann::json j;
    j["family"] = s.family;
    j["X"] = s.X;
    j["A"] = s.A.get_str();
    j["R"] = s.R.get_str();
    j["NE"] = s.NE;
    j["rows"] = s.rows;
    j["degenerate"] = s.degenerate;
    j["unclassified"] = s.unclassified;
    nlohmann::json nz;
    for (int l = 1; l <= 4; ++l) nz[std::to_string(l)] = s.NZ[l];
    j["NZ"] = nz;
    nlohmann::json tallies;
    for (int i = 0; i <= 6; ++i) tallies["E" + std::to_string(i)] = s.class_tallies[i];
    j["class_tallies"] = tallies;
    if (s.identities.applicable) {
        j["identities"] = {
            {"NE_direct", s.identities.ne_direct},
            {"NE_from_classes", s.identities.ne_from_classes},
            {"NE_ok", s.identities.ne_ok},
            {"R_direct", s.identities.r_direct.get_str()},
            {"R_from_classes", s.identities.r_from_classes.get_str()},
            {"R_ok", s.identities.r_ok},
        };
    } else {
        j["identities"] = "not applicable";
    }
    return j.dump(2);
}

} // namespace preper
