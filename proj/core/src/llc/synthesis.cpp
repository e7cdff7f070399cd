#include "qcomp/llc/synthesis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "qcomp/error.hpp"

namespace qcomp::llc {

namespace {

using std::numbers::pi;

Quat gate_quat(GateKind k) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (k) {
        case GateKind::H: return {0.0, r, 0.0, r};
        case GateKind::X: return {0.0, 1.0, 0.0, 0.0};
        case GateKind::Y: return {0.0, 0.0, 1.0, 0.0};
        case GateKind::Z: return {0.0, 0.0, 0.0, 1.0};
        case GateKind::S: return Quat::rz(pi / 2);
        case GateKind::Sdg: return Quat::rz(-pi / 2);
        case GateKind::T: return Quat::rz(pi / 4);
        case GateKind::Tdg: return Quat::rz(-pi / 4);
        default: throw Error(ErrorCode::UnsupportedKind, "gate is not a synthesis word letter");
    }
}

// Exponent of T for diagonal letters, -1 otherwise.
int t_power(GateKind k) {
    switch (k) {
        case GateKind::T: return 1;
        case GateKind::S: return 2;
        case GateKind::Z: return 4;
        case GateKind::Sdg: return 6;
        case GateKind::Tdg: return 7;
        default: return -1;
    }
}

void append_power(Word& out, int p) {
    using enum GateKind;
    static const std::array<std::vector<GateKind>, 8> table{
        std::vector<GateKind>{}, {T}, {S}, {S, T}, {Z}, {Z, T}, {Sdg}, {Tdg}};
    const auto& seq = table[static_cast<std::size_t>(p & 7)];
    out.insert(out.end(), seq.begin(), seq.end());
}

struct CliffordTable {
    std::vector<Quat> elements;
    std::vector<Word> words;  // operator order
};

CliffordTable make_cliffords() {
    using enum GateKind;
    const std::array<GateKind, 5> generators{H, S, Sdg, Z, X};
    CliffordTable table;
    std::set<std::array<long long, 4>> seen;
    auto key = [](const Quat& q) {
        const Quat c = q.canonical();
        return std::array<long long, 4>{std::llround(c.w * 1e9), std::llround(c.x * 1e9),
                                        std::llround(c.y * 1e9), std::llround(c.z * 1e9)};
    };
    table.elements.push_back(Quat{});
    table.words.push_back({});
    seen.insert(key(Quat{}));
    for (std::size_t head = 0; head < table.elements.size(); ++head) {
        for (GateKind g : generators) {
            const Quat q = gate_quat(g) * table.elements[head];
            if (seen.insert(key(q)).second) {
                Word w{g};
                w.insert(w.end(), table.words[head].begin(), table.words[head].end());
                table.elements.push_back(q);
                table.words.push_back(std::move(w));
            }
        }
    }
    return table;
}

const CliffordTable& cliffords() {
    static const CliffordTable table = make_cliffords();
    return table;
}

constexpr char kMagic[8] = {'Q', 'C', 'S', 'Y', 'N', 'T', 'H', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

Matrix2 word_matrix(const Word& word) {
    Matrix2 m = Matrix2::Identity();
    for (GateKind g : word) m = Matrix2(gate_matrix(Gate::simple(g))) * m;
    return m;
}

std::size_t t_count(const Word& word) {
    return static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](GateKind g) {
        return g == GateKind::T || g == GateKind::Tdg;
    }));
}

Word inverse_word(const Word& word) {
    Word out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(Gate::simple(*it).adjoint().kind);
    return out;
}

Word canonical_word(const Word& word) {
    Word out;
    out.reserve(word.size());
    int power = 0;
    bool in_run = false;
    auto flush = [&] {
        if (in_run) append_power(out, power);
        power = 0;
        in_run = false;
    };
    for (GateKind g : word) {
        const int p = t_power(g);
        if (p >= 0) {
            power = (power + p) & 7;
            in_run = true;
            continue;
        }
        flush();
        if (!out.empty() && out.back() == g && (g == GateKind::H || g == GateKind::X || g == GateKind::Y)) {
            out.pop_back();
            // The cancellation can join two diagonal runs.
            int tail = 0;
            bool tail_run = false;
            while (!out.empty() && t_power(out.back()) >= 0) {
                tail = (tail + t_power(out.back())) & 7;
                tail_run = true;
                out.pop_back();
            }
            power = tail;
            in_run = tail_run;
            continue;
        }
        out.push_back(g);
    }
    flush();
    return out;
}

SynthesisDatabase SynthesisDatabase::build(int depth) {
    if (depth < 0 || depth > 30) throw Error(ErrorCode::InvalidArgument, "synthesis depth must be in [0, 30]");
    const CliffordTable& cl = cliffords();
    SynthesisDatabase db;
    db.depth_ = depth;
    const Quat t = gate_quat(GateKind::T);
    const std::array<Quat, 2> factors{gate_quat(GateKind::H) * t,
                                      gate_quat(GateKind::S) * gate_quat(GateKind::H) * t};

    std::size_t total = cl.elements.size();
    for (int j = 1; j <= depth; ++j) total += 3 * (cl.elements.size() << (j - 1));
    db.entries_.reserve(total);
    db.elements_.reserve(total);

    std::vector<std::size_t> previous;  // indices of the (HT|SHT)^(j-1) C layer
    for (std::size_t c = 0; c < cl.elements.size(); ++c) {
        previous.push_back(db.entries_.size());
        db.entries_.push_back({0, 0, 0, static_cast<std::uint8_t>(c), 0});
        db.elements_.push_back(cl.elements[c]);
    }
    for (int j = 1; j <= depth; ++j) {
        std::vector<std::size_t> layer;
        layer.reserve(previous.size() * 2);
        for (std::size_t idx : previous) {
            const Entry base = db.entries_[idx];
            const Quat q = db.elements_[idx];
            for (std::uint32_t b = 0; b < 2; ++b) {
                layer.push_back(db.entries_.size());
                db.entries_.push_back({(base.pattern << 1) | b, static_cast<std::uint8_t>(j), 0, base.clifford, 0});
                db.elements_.push_back(factors[b] * q);
            }
        }
        for (std::size_t idx : previous) {
            Entry e = db.entries_[idx];
            e.t_prefix = 1;
            db.entries_.push_back(e);
            db.elements_.push_back(t * db.elements_[idx]);
        }
        previous = std::move(layer);
    }
    for (std::size_t i = 0; i < db.entries_.size(); ++i) {
        db.entries_[i].length = static_cast<std::uint8_t>(std::min<std::size_t>(db.word(i).size(), 255));
    }
    return db;
}

Word SynthesisDatabase::word(std::size_t i) const {
    using enum GateKind;
    const Entry& e = entries_[i];
    Word ops;  // operator order
    if (e.t_prefix) ops.push_back(T);
    for (int j = 0; j < e.k; ++j) {
        if ((e.pattern >> j) & 1u) ops.push_back(S);
        ops.push_back(H);
        ops.push_back(T);
    }
    const Word& c = cliffords().words[e.clifford];
    ops.insert(ops.end(), c.begin(), c.end());
    std::reverse(ops.begin(), ops.end());
    return canonical_word(ops);
}

std::size_t SynthesisDatabase::nearest(const Quat& q) const {
    std::size_t best = 0;
    double best_dot = -1.0;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const double d = std::abs(elements_[i].dot(q));
        if (d > best_dot) {
            best_dot = d;
            best = i;
        }
    }
    return best;
}

std::optional<std::size_t> SynthesisDatabase::shortest_within(const Quat& q, double eps) const {
    // Distance <= eps  <=>  |dot| >= 1 - eps^2 / 2; a small slack keeps
    // borderline candidates and the exact distance settles them.
    const double threshold = 1.0 - eps * eps / 2.0 - 1e-12;
    std::optional<std::size_t> best;
    double best_distance = 0.0;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (std::abs(elements_[i].dot(q)) < threshold) continue;
        const double d = quat_distance(elements_[i], q);
        if (d > eps) continue;
        if (!best) {
            best = i;
            best_distance = d;
            continue;
        }
        const auto li = entries_[i].length;
        const auto lb = entries_[*best].length;
        if (li > lb || (li == lb && d > best_distance)) continue;
        if (li == lb && d == best_distance && !(word(i) < word(*best))) continue;
        best = i;
        best_distance = d;
    }
    return best;
}

std::filesystem::path SynthesisDatabase::cache_file(const std::filesystem::path& dir, int depth) {
    return dir / ("qcomp-synth-d" + std::to_string(depth) + ".bin");
}

void SynthesisDatabase::save(const std::filesystem::path& file) const {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp);
        const std::uint64_t count = entries_.size();
        const auto d = static_cast<std::int32_t>(depth_);
        out.write(kMagic, sizeof kMagic);
        out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
        out.write(reinterpret_cast<const char*>(&d), sizeof d);
        out.write(reinterpret_cast<const char*>(&count), sizeof count);
        out.write(reinterpret_cast<const char*>(entries_.data()),
                  static_cast<std::streamsize>(count * sizeof(Entry)));
        out.write(reinterpret_cast<const char*>(elements_.data()),
                  static_cast<std::streamsize>(count * sizeof(Quat)));
    }
    std::filesystem::rename(tmp, file);
}

std::optional<SynthesisDatabase> SynthesisDatabase::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[sizeof kMagic];
    std::uint32_t version = 0;
    std::int32_t depth = 0;
    std::uint64_t count = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&depth), sizeof depth);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0 || version != kCacheVersion) return std::nullopt;
    std::uint64_t expected = 24;
    for (int j = 1; j <= depth; ++j) expected += 72ull << (j - 1);
    if (depth < 0 || depth > 30 || count != expected) return std::nullopt;
    SynthesisDatabase db;
    db.depth_ = depth;
    db.entries_.resize(count);
    db.elements_.resize(count);
    in.read(reinterpret_cast<char*>(db.entries_.data()), static_cast<std::streamsize>(count * sizeof(Entry)));
    in.read(reinterpret_cast<char*>(db.elements_.data()), static_cast<std::streamsize>(count * sizeof(Quat)));
    if (!in) return std::nullopt;
    return db;
}

SynthesisDatabase SynthesisDatabase::load_or_build(int depth, const std::filesystem::path& dir) {
    const auto file = cache_file(dir, depth);
    if (auto db = load(file); db && db->depth() == depth) return std::move(*db);
    SynthesisDatabase db = build(depth);
    try {
        db.save(file);
    } catch (const std::exception&) {
        // An unwritable cache only costs a rebuild next time.
    }
    return db;
}

Synthesizer::Synthesizer(std::shared_ptr<const SynthesisDatabase> db, SynthesisOptions options)
    : db_(std::move(db)), options_(options) {
    if (!db_) throw Error(ErrorCode::InvalidArgument, "synthesizer needs a database");
}

namespace {

// V, W with V W V^-1 W^-1 = delta (balanced group commutator).
std::pair<Quat, Quat> group_commutator(const Quat& delta_in) {
    const Quat delta = delta_in.w < 0 ? Quat{-delta_in.w, -delta_in.x, -delta_in.y, -delta_in.z} : delta_in;
    const double sin_half = std::sqrt(delta.x * delta.x + delta.y * delta.y + delta.z * delta.z);
    if (sin_half < 1e-15) return {Quat{}, Quat{}};
    const double s2 = (1.0 - std::sqrt(std::max(0.0, 1.0 - sin_half * sin_half))) / 2.0;
    const double phi = 2.0 * std::asin(std::sqrt(std::sqrt(s2)));
    const Quat v = Quat::axis_angle(1, 0, 0, phi);
    const Quat w = Quat::axis_angle(0, 1, 0, phi);
    Quat c = v * w * v.conj() * w.conj();
    if (c.w < 0) c = {-c.w, -c.x, -c.y, -c.z};
    const double cn = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
    const std::array<double, 3> m{c.x / cn, c.y / cn, c.z / cn};
    const std::array<double, 3> n{delta.x / sin_half, delta.y / sin_half, delta.z / sin_half};
    // Rotation taking axis m to axis n.
    std::array<double, 3> axis{m[1] * n[2] - m[2] * n[1], m[2] * n[0] - m[0] * n[2], m[0] * n[1] - m[1] * n[0]};
    const double cross = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    const double dot = m[0] * n[0] + m[1] * n[1] + m[2] * n[2];
    Quat s;
    if (cross < 1e-15) {
        // Parallel axes need nothing; antiparallel ones a half turn about any
        // perpendicular axis.
        if (dot < 0) {
            axis = std::abs(m[0]) < 0.9 ? std::array<double, 3>{0, -m[2], m[1]}
                                        : std::array<double, 3>{-m[1], m[0], 0};
            const double an = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
            s = Quat::axis_angle(axis[0] / an, axis[1] / an, axis[2] / an, pi);
        }
    } else {
        s = Quat::axis_angle(axis[0] / cross, axis[1] / cross, axis[2] / cross, std::atan2(cross, dot));
    }
    return {s * v * s.conj(), s * w * s.conj()};
}

Word concat(std::initializer_list<const Word*> parts) {
    Word out;
    for (const Word* p : parts) out.insert(out.end(), p->begin(), p->end());
    return canonical_word(out);
}

}  // namespace

std::pair<Word, Quat> Synthesizer::solovay_kitaev(const Quat& u, int level) const {
    if (level == 0) {
        const std::size_t i = db_->nearest(u);
        return {db_->word(i), db_->element(i)};
    }
    auto [prev_word, prev] = solovay_kitaev(u, level - 1);
    const auto [v, w] = group_commutator(u * prev.conj());
    auto [v_word, vq] = solovay_kitaev(v, level - 1);
    auto [w_word, wq] = solovay_kitaev(w, level - 1);
    const Word v_inv = inverse_word(v_word);
    const Word w_inv = inverse_word(w_word);
    // Operator V W V^-1 W^-1 U_prev, so U_prev acts first.
    Word word = concat({&prev_word, &w_inv, &v_inv, &w_word, &v_word});
    const Quat q = vq * wq * vq.conj() * wq.conj() * prev;
    return {std::move(word), q};
}

SynthesisResult Synthesizer::synthesize(const Matrix2& u, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "synthesis tolerance must be positive");
    const Quat target = Quat::from_matrix(u);
    SynthesisResult result;
    result.tolerance = eps;
    double best = 2.0;
    if (auto idx = db_->shortest_within(target, eps)) {
        result.word = db_->word(*idx);
        result.distance = phase_invariant_distance(word_matrix(result.word), u);
        if (result.distance <= eps) return result;
        best = result.distance;
    }
    for (int level = 1; level <= options_.max_recursion; ++level) {
        auto [word, q] = solovay_kitaev(target, level);
        const double d = phase_invariant_distance(word_matrix(word), u);
        best = std::min(best, d);
        if (d <= eps) {
            result.word = std::move(word);
            result.distance = d;
            return result;
        }
    }
    std::ostringstream msg;
    msg << "cannot reach tolerance " << eps << " (best distance " << best << " after "
        << options_.max_recursion << " Solovay-Kitaev levels)";
    throw Error(ErrorCode::SynthesisFailure, msg.str());
}

SynthesisResult Synthesizer::synthesize_rz(double theta, double eps) {
    const auto key = std::make_pair(theta, eps);
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    SynthesisResult r = synthesize(gate_matrix(Gate::rz(theta)), eps);
    r.angle = theta;
    std::lock_guard lock(mutex_);
    memo_.emplace(key, r);
    return r;
}

Synthesizer& default_synthesizer() {
    static Synthesizer instance = [] {
        const char* dir = std::getenv("QCOMP_CACHE_DIR");
        auto db = dir && *dir ? SynthesisDatabase::load_or_build(SynthesisDatabase::kDefaultDepth, dir)
                              : SynthesisDatabase::build(SynthesisDatabase::kDefaultDepth);
        return Synthesizer(std::make_shared<const SynthesisDatabase>(std::move(db)));
    }();
    return instance;
}

SynthesisResult synthesize_rz(double theta, double eps) { return default_synthesizer().synthesize_rz(theta, eps); }

}  // namespace qcomp::llc
