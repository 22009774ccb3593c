#include "pda/caching.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace pda::caching {

void Instance::check_against(const Grid& g) const {
    if (k_users != g.cols() || f_subfiles != g.rows() || demands.size() != g.cols()) {
        throw UsageError("instance dimensions do not match the grid (K=" + std::to_string(g.cols()) +
                         ", F=" + std::to_string(g.rows()) + ")");
    }
    if (n_files == 0) {
        throw UsageError("need at least one file");
    }
    for (const std::size_t w : demands) {
        if (w >= n_files) {
            throw UsageError("demand " + std::to_string(w) + " outside [0," +
                             std::to_string(n_files) + ")");
        }
    }
}

Bytes subfile_content(const Instance& inst, SubfileId id) {
    std::seed_seq seq{static_cast<std::uint32_t>(inst.seed), static_cast<std::uint32_t>(inst.seed >> 32),
                      static_cast<std::uint32_t>(id.first), static_cast<std::uint32_t>(id.second)};
    std::mt19937 gen(seq);
    Bytes out(inst.subfile_size);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& b : out) {
        b = static_cast<std::uint8_t>(byte(gen));
    }
    return out;
}

Library::Library(const Instance& inst, std::size_t f_subfiles) : f_(f_subfiles) {
    contents_.reserve(inst.n_files * f_subfiles);
    for (std::size_t w = 0; w < inst.n_files; ++w) {
        for (std::size_t j = 0; j < f_subfiles; ++j) {
            contents_.push_back(subfile_content(inst, {w, j}));
        }
    }
}

const Bytes* UserCache::find(SubfileId id) const {
    const auto it = subfiles.find(id);
    return it == subfiles.end() ? nullptr : &it->second;
}

bool Transcript::decoded_all() const {
    return std::all_of(decoded.begin(), decoded.end(), [](bool b) { return b; });
}

nlohmann::json Transcript::summary() const {
    return {{"rate", std::to_string(rate.numerator()) + "/" + std::to_string(rate.denominator())},
            {"broadcasts", broadcasts.size()},
            {"decoded_all", decoded_all()}};
}

namespace {

Placement place_with(const Grid& g, const Instance& inst, const Library& lib) {
    Placement out(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k) {
        for (std::size_t j = 0; j < g.rows(); ++j) {
            if (!g.at(j, k).is_star()) {
                continue;
            }
            for (std::size_t w = 0; w < inst.n_files; ++w) {
                out[k].subfiles.emplace(SubfileId{w, j}, lib.at({w, j}));
            }
        }
    }
    return out;
}

void xor_into(Bytes& acc, const Bytes& b) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] ^= b[i];
    }
}

std::vector<Broadcast> deliver_with(const Grid& g, const Instance& inst, const Library& lib) {
    std::vector<std::vector<SubfileId>> terms(g.s_bound());
    for (std::size_t j = 0; j < g.rows(); ++j) {
        for (std::size_t k = 0; k < g.cols(); ++k) {
            if (const Cell c = g.at(j, k); c.is_symbol()) {
                terms[c.value()].emplace_back(inst.demands[k], j);
            }
        }
    }
    std::vector<Broadcast> out;
    for (Symbol s = 0; s < terms.size(); ++s) {
        if (terms[s].empty()) {
            continue;
        }
        Broadcast b{s, terms[s], Bytes(inst.subfile_size, 0)};
        for (const auto& id : b.terms) {
            xor_into(b.payload, lib.at(id));
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<bool> decode_with(const Grid& g, const Instance& inst, const Placement& placement,
                              const std::vector<Broadcast>& broadcasts, const Library& lib) {
    std::vector<const Broadcast*> by_symbol(g.s_bound(), nullptr);
    for (const auto& b : broadcasts) {
        if (b.symbol < by_symbol.size()) {
            by_symbol[b.symbol] = &b;
        }
    }

    std::vector<bool> verdicts(g.cols(), true);
    for (std::size_t k = 0; k < g.cols(); ++k) {
        const std::size_t want = inst.demands[k];
        const UserCache& cache = placement.at(k);
        bool ok = true;
        for (std::size_t j = 0; j < g.rows() && ok; ++j) {
            const SubfileId target{want, j};
            Bytes recovered;
            if (const Cell c = g.at(j, k); c.is_star()) {
                const Bytes* cached = cache.find(target);
                ok = cached != nullptr;
                if (ok) {
                    recovered = *cached;
                }
            } else {
                const Broadcast* b = by_symbol[c.value()];
                ok = b != nullptr;
                if (ok) {
                    recovered = b->payload;
                    // Cancel every other term; cells of the same symbol lie in
                    // distinct rows, so the user's own term occurs once.
                    bool own_seen = false;
                    for (const auto& term : b->terms) {
                        if (term == target && !own_seen) {
                            own_seen = true;
                            continue;
                        }
                        const Bytes* cached = cache.find(term);
                        if (cached == nullptr) {
                            ok = false;
                            break;
                        }
                        xor_into(recovered, *cached);
                    }
                }
            }
            ok = ok && recovered == lib.at(target);
        }
        verdicts[k] = ok;
    }
    return verdicts;
}

}  // namespace

Placement place(const Grid& g, const Instance& inst) {
    inst.check_against(g);
    return place_with(g, inst, Library(inst, g.rows()));
}

std::vector<Broadcast> deliver(const Grid& g, const Instance& inst, const Placement& placement) {
    inst.check_against(g);
    if (placement.size() != g.cols()) {
        throw UsageError("placement does not match the grid");
    }
    return deliver_with(g, inst, Library(inst, g.rows()));
}

std::vector<bool> decode(const Grid& g, const Instance& inst, const Placement& placement,
                         const std::vector<Broadcast>& broadcasts) {
    inst.check_against(g);
    if (placement.size() != g.cols()) {
        throw UsageError("placement does not match the grid");
    }
    return decode_with(g, inst, placement, broadcasts, Library(inst, g.rows()));
}

Rate rate(const Grid& g) {
    return Rate(static_cast<std::int64_t>(g.symbols_used()), static_cast<std::int64_t>(g.rows()));
}

Transcript simulate(const Grid& g, const Instance& inst) {
    inst.check_against(g);
    const Library lib(inst, g.rows());
    Transcript t;
    t.placement = place_with(g, inst, lib);
    t.broadcasts = deliver_with(g, inst, lib);
    t.decoded = decode_with(g, inst, t.placement, t.broadcasts, lib);
    t.rate = rate(g);
    return t;
}

}  // namespace pda::caching
