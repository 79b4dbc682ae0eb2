#include "salss/observe.hpp"

#include <algorithm>
#include <cmath>

#include "salss/errors.hpp"

namespace salss {

namespace {

constexpr std::size_t kInlineClocks = 16;

// Dense ranks of e(c) - v(c), written through `put` in clock order.
template <class Put>
void emit_ranks(const Valuation& values, const Valuation& expirations, Put&& put) {
    const std::size_t k = values.size();
    auto emit = [&](double* sorted) {
        for (std::size_t c = 0; c < k; ++c) {
            sorted[c] = expirations[c] - values[c];
        }
        std::sort(sorted, sorted + k);
        double* end = std::unique(sorted, sorted + k);
        for (std::size_t c = 0; c < k; ++c) {
            const double r = expirations[c] - values[c];
            put(static_cast<std::uint64_t>(std::lower_bound(sorted, end, r) - sorted));
        }
    };
    if (k <= kInlineClocks) {
        std::array<double, kInlineClocks> buffer{};
        emit(buffer.data());
    } else {
        std::vector<double> buffer(k);
        emit(buffer.data());
    }
}

template <class Put>
void encode_state(const Observer& o, const State& s, double elapsed, const std::uint64_t* digest, Put&& put) {
    put(o.cls.tag());
    put(o.n.factor);
    put(s.location);
    if (digest != nullptr) {
        put(*digest);
    }
    switch (o.cls.timing) {
        case Timing::values:
            for (const double v : s.values) {
                put(discretise(v, o.n));
            }
            break;
        case Timing::global_time:
            put(discretise(elapsed, o.n));
            break;
        case Timing::none:
            break;
    }
    switch (o.cls.future) {
        case Future::expirations:
            for (const double e : s.expirations) {
                put(discretise(e, o.n));
            }
            break;
        case Future::order:
            emit_ranks(s.values, s.expirations, put);
            break;
        case Future::none:
            break;
    }
}

template <class Put>
void encode_label(const StepLabel& label, Discretisation n, Put&& put) {
    if (const auto* j = std::get_if<Jump>(&label)) {
        put(0);
        put(j->action);
    } else {
        put(1);
        put(discretise(std::get<Delay>(label).duration, n));
    }
}

std::uint64_t label_ticks(const StepLabel& label, Discretisation n) {
    if (const auto* d = std::get_if<Delay>(&label)) {
        return discretise(d->duration, n);
    }
    return 0;
}

}  // namespace

std::string SchedulerClass::spec() const {
    std::string out = memory == Memory::history ? "hist:" : "ml:";
    std::string parts;
    if (timing == Timing::values) parts += "v";
    if (timing == Timing::global_time) parts += "t";
    if (future != Future::none) {
        if (!parts.empty()) parts += ",";
        parts += future == Future::expirations ? "e" : "o";
    }
    return out + parts;
}

std::string SchedulerClass::display_name() const {
    std::string out = memory == Memory::history ? "hist ℓ" : "ml ℓ";
    if (timing == Timing::values) out += ",v";
    if (timing == Timing::global_time) out += ",t";
    if (future == Future::expirations) out += ",e";
    if (future == Future::order) out += ",o";
    return out;
}

std::optional<SchedulerClass> SchedulerClass::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        return std::nullopt;
    }
    SchedulerClass cls{Memory::memoryless, Timing::none, Future::none};
    const auto head = spec.substr(0, colon);
    if (head == "hist") {
        cls.memory = Memory::history;
    } else if (head != "ml") {
        return std::nullopt;
    }
    auto rest = spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item == "v" || item == "t") {
            if (cls.timing != Timing::none) return std::nullopt;
            cls.timing = item == "v" ? Timing::values : Timing::global_time;
        } else if (item == "e" || item == "o") {
            if (cls.future != Future::none) return std::nullopt;
            cls.future = item == "e" ? Future::expirations : Future::order;
        } else {
            return std::nullopt;
        }
        if (comma != std::string_view::npos && rest.empty()) {
            return std::nullopt;  // trailing comma
        }
    }
    return cls;
}

const std::array<SchedulerClass, 18>& all_classes() {
    static const std::array<SchedulerClass, 18> classes = [] {
        std::array<SchedulerClass, 18> out{};
        std::size_t i = 0;
        for (const Memory m : {Memory::history, Memory::memoryless}) {
            for (const Future f : {Future::expirations, Future::order, Future::none}) {
                for (const Timing t : {Timing::values, Timing::global_time, Timing::none}) {
                    out[i++] = SchedulerClass{m, t, f};
                }
            }
        }
        return out;
    }();
    return classes;
}

std::uint64_t discretise(double x, Discretisation n) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ContractViolation("discretise expects a finite non-negative value");
    }
    return static_cast<std::uint64_t>(std::floor(x * static_cast<double>(n.factor)));
}

ExpirationOrder expiration_order(const Valuation& values, const Valuation& expirations) {
    ExpirationOrder order;
    order.ranks.reserve(values.size());
    emit_ranks(values, expirations, [&](std::uint64_t r) { order.ranks.push_back(static_cast<std::uint32_t>(r)); });
    return order;
}

std::vector<std::byte> ObservationKey::bytes() const {
    std::vector<std::byte> out;
    out.reserve(_words.size() * 8);
    for (const std::uint64_t w : _words) {
        for (int i = 0; i < 8; ++i) {
            out.push_back(static_cast<std::byte>((w >> (8 * i)) & 0xFF));
        }
    }
    return out;
}

std::uint64_t ObservationKey::hash(std::uint64_t basis) const noexcept {
    Fnv1a64 h{basis};
    for (const std::uint64_t w : _words) {
        h.add_u64(w);
    }
    return h.value();
}

void project_into(const Observer& observer, const RunContext& ctx, ObservationKey& key) {
    key.clear();
    const std::uint64_t* digest = observer.cls.memory == Memory::history ? &ctx.trace.digest : nullptr;
    encode_state(observer, ctx.state, ctx.elapsed, digest, [&](std::uint64_t w) { key.push(w); });
}

ObservationKey project(const Observer& observer, const RunContext& ctx) {
    ObservationKey key;
    project_into(observer, ctx, key);
    return key;
}

ObservationKey state_record(const Observer& observer, const State& state, double elapsed) {
    ObservationKey key;
    encode_state(observer, state, elapsed, nullptr, [&](std::uint64_t w) { key.push(w); });
    return key;
}

ObservationTrace extend_trace(const ObservationTrace& trace, const Observer& observer,
                              const ObservationKey& pre_state_record, const StepLabel& label) {
    Fnv1a64 h{trace.digest};
    for (const std::uint64_t w : pre_state_record.words()) {
        h.add_u64(w);
    }
    encode_label(label, observer.n, [&](std::uint64_t w) { h.add_u64(w); });
    return ObservationTrace{h.value(), trace.steps + 1, trace.delay_ticks + label_ticks(label, observer.n)};
}

ObservationTrace extend_trace(const ObservationTrace& trace, const Observer& observer, const State& pre_state,
                              double elapsed, const StepLabel& label) {
    Fnv1a64 h{trace.digest};
    auto put = [&](std::uint64_t w) { h.add_u64(w); };
    encode_state(observer, pre_state, elapsed, nullptr, put);
    encode_label(label, observer.n, put);
    return ObservationTrace{h.value(), trace.steps + 1, trace.delay_ticks + label_ticks(label, observer.n)};
}

}  // namespace salss
