#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "qcomp/ir/gate.hpp"
#include "qcomp/ir/matrix.hpp"
#include "qcomp/llc/su2.hpp"

namespace qcomp::llc {

/// Single-qubit gate sequence in time order.
using Word = std::vector<GateKind>;

/// Product of the word's gate matrices.
[[nodiscard]] Matrix2 word_matrix(const Word& word);
[[nodiscard]] std::size_t t_count(const Word& word);
/// Adjoint word (reversed, each gate inverted).
[[nodiscard]] Word inverse_word(const Word& word);
/// Merges runs of diagonal Clifford+T gates into T-power normal form
/// (T, S, S T, Z, Z T, Sdg, Tdg) and cancels adjacent H pairs.
[[nodiscard]] Word canonical_word(const Word& word);

struct SynthesisResult {
    Word word;
    /// Phase-invariant spectral distance of the word to the target, recomputed
    /// from the word's matrices.
    double distance = 0.0;
    double angle = 0.0;
    double tolerance = 0.0;
};

/// Every Clifford+T operator up to global phase with T-count at most `depth`,
/// each stored once in Matsumoto-Amano normal form:
/// [T] (HT | SHT)^k C with C one of the 24 Cliffords.
class SynthesisDatabase {
public:
    static constexpr int kDefaultDepth = 14;

    [[nodiscard]] static SynthesisDatabase build(int depth);
    /// Reads `<dir>/qcomp-synth-d<depth>.bin`, building and writing it when
    /// absent or unreadable.
    [[nodiscard]] static SynthesisDatabase load_or_build(int depth, const std::filesystem::path& dir);
    [[nodiscard]] static std::optional<SynthesisDatabase> load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;
    [[nodiscard]] static std::filesystem::path cache_file(const std::filesystem::path& dir, int depth);

    [[nodiscard]] int depth() const { return depth_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] const Quat& element(std::size_t i) const { return elements_[i]; }
    [[nodiscard]] Word word(std::size_t i) const;
    [[nodiscard]] std::size_t word_length(std::size_t i) const { return entries_[i].length; }

    /// Index of the element closest to q (first on ties).
    [[nodiscard]] std::size_t nearest(const Quat& q) const;
    /// Shortest word within eps of q; ties go to the smaller distance, then to
    /// the lexicographically smaller word.
    [[nodiscard]] std::optional<std::size_t> shortest_within(const Quat& q, double eps) const;

private:
    struct Entry {
        std::uint32_t pattern;  // bit j: factor j from the left is SHT (1) or HT (0)
        std::uint8_t k;         // number of HT/SHT factors
        std::uint8_t t_prefix;  // leading T factor
        std::uint8_t clifford;
        std::uint8_t length;    // canonical word length
    };

    int depth_ = 0;
    std::vector<Entry> entries_;
    std::vector<Quat> elements_;
};

struct SynthesisOptions {
    /// Solovay-Kitaev levels tried after a database miss.
    int max_recursion = 4;
};

/// Rz synthesis over a shared database. Results are memoized per
/// (angle, tolerance); safe to call from several threads.
class Synthesizer {
public:
    explicit Synthesizer(std::shared_ptr<const SynthesisDatabase> db, SynthesisOptions options = {});

    /// Word within eps of Rz(theta) modulo global phase: the shortest database
    /// word when one qualifies, else Solovay-Kitaev at the lowest level that
    /// reaches eps. Throws SynthesisFailure with the best distance otherwise.
    [[nodiscard]] SynthesisResult synthesize_rz(double theta, double eps);
    /// Same contract for an arbitrary single-qubit unitary.
    [[nodiscard]] SynthesisResult synthesize(const Matrix2& u, double eps);

    [[nodiscard]] const SynthesisDatabase& database() const { return *db_; }

private:
    std::pair<Word, Quat> solovay_kitaev(const Quat& u, int level) const;

    std::shared_ptr<const SynthesisDatabase> db_;
    SynthesisOptions options_;
    std::mutex mutex_;
    std::map<std::pair<double, double>, SynthesisResult> memo_;
};

/// Process-wide synthesizer at the default depth. The database is cached
/// under $QCOMP_CACHE_DIR when that variable is set.
[[nodiscard]] Synthesizer& default_synthesizer();

[[nodiscard]] SynthesisResult synthesize_rz(double theta, double eps);

}  // namespace qcomp::llc
