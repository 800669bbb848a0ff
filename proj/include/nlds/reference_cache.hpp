#pragma once

#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <mutex>

#include "nlds/field_io.hpp"
#include "nlds/schemes.hpp"

namespace nlds {

/// Everything a reference solution depends on. The hash keys both the on-disk
/// container and the in-flight deduplication map.
struct ReferenceKey {
    GridPtr grid;
    double final_time = 0.0;
    PhysicsParams params;
    SpinorField initial;
    double tau_e = 0.0;

    std::uint64_t hash() const {
        std::uint64_t h = fnv1a("nlds-ref-v1", 11);
        h = fnv1a_f64(grid->a(), h);
        h = fnv1a_f64(grid->b(), h);
        h = fnv1a_f64(static_cast<double>(grid->size()), h);
        h = fnv1a_f64(final_time, h);
        h = fnv1a_f64(params.eps, h);
        h = fnv1a_f64(params.lambda1, h);
        h = fnv1a_f64(params.lambda2, h);
        h = fnv1a_f64(static_cast<double>(params.potential.size()), h);
        for (double v : params.potential) h = fnv1a_f64(v, h);
        for (int j = 0; j < initial.size(); ++j) {
            h = fnv1a_f64(initial.c1[j].real(), h);
            h = fnv1a_f64(initial.c1[j].imag(), h);
            h = fnv1a_f64(initial.c2[j].real(), h);
            h = fnv1a_f64(initial.c2[j].imag(), h);
        }
        h = fnv1a_f64(tau_e, h);
        return h;
    }
};

/// Disk + memory cache of S2 fine-step reference solutions. At most one
/// caller computes a missing key; concurrent requesters wait on its future.
/// A corrupt container is recomputed with a warning, never trusted.
class ReferenceCache {
public:
    explicit ReferenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(const ReferenceKey& key) const {
        char name[32];
        std::snprintf(name, sizeof name, "%016llx.ref",
                      static_cast<unsigned long long>(key.hash()));
        return dir_ / name;
    }

    SpinorField get_or_compute(const ReferenceKey& key) {
        return get_or_compute(key, [&key] { return compute_reference_field(key); });
    }

    SpinorField get_or_compute(const ReferenceKey& key,
                               const std::function<SpinorField()>& compute) {
        const std::uint64_t h = key.hash();
        std::shared_future<SpinorField> fut;
        bool owner = false;
        std::promise<SpinorField> promise;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = inflight_.find(h);
            if (it != inflight_.end()) {
                fut = it->second;
            } else {
                fut = promise.get_future().share();
                inflight_.emplace(h, fut);
                owner = true;
            }
        }
        if (!owner) return fut.get();

        try {
            SpinorField field = load_or_compute(key, h, compute);
            promise.set_value(field);
            return field;
        } catch (...) {
            {
                std::lock_guard<std::mutex> lock(mutex_);
                inflight_.erase(h);
            }
            promise.set_exception(std::current_exception());
            throw;
        }
    }

    /// The S2 run behind every cache entry.
    static SpinorField compute_reference_field(const ReferenceKey& key) {
        const double ratio = key.final_time / key.tau_e;
        const long steps = std::lround(ratio);
        if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
            throw std::invalid_argument("reference: tau_e does not divide final time");
        SchemeRun run;
        run.scheme = Scheme::S2;
        run.tau = key.final_time / static_cast<double>(steps);
        run.steps = steps;
        run.params = key.params;
        run.initial = key.initial;
        return evolve(run).field;
    }

private:
    SpinorField load_or_compute(const ReferenceKey& key, std::uint64_t h,
                                const std::function<SpinorField()>& compute) {
        const auto path = path_for(key);
        if (std::filesystem::exists(path)) {
            try {
                return load_field(path, key.grid, h);
            } catch (const io_error& e) {
                std::cerr << "warning: reference cache entry rejected (" << e.what()
                          << "); recomputing\n";
            }
        }
        SpinorField field = compute();
        FieldHeader hdr;
        hdr.eps = key.params.eps;
        hdr.time = key.final_time;
        hdr.tau = key.tau_e;
        hdr.meta_hash = h;
        save_field(path, field, hdr);
        return field;
    }

    std::filesystem::path dir_;
    std::mutex mutex_;
    std::map<std::uint64_t, std::shared_future<SpinorField>> inflight_;
};

}  // namespace nlds
