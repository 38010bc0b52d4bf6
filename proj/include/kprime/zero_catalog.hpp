#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "kprime/characters.hpp"

namespace kprime {

/// Positive ordinates of critical-line zeros of L(s, chi) for one
/// character, strictly increasing, complete up to height_limit.
struct zero_list {
    u64 character_label = 0;
    std::vector<double> gammas;
    double height_limit = 0.0;
    double precision = 0.0;  // absolute error bound per ordinate
};

enum class zero_provenance { imported, computed };

struct zero_catalog {
    u64 modulus = 0;
    std::map<u64, zero_list> lists;  // keyed and ordered by label
    zero_provenance provenance = zero_provenance::imported;
    double validated_height = 0.0;   // raised by validate() on success
};

struct zero_count_check {
    u64 label = 0;
    u64 observed = 0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool count_ok = false;
    bool ordering_ok = false;  // positive and strictly increasing
};

struct validation_report {
    double height = 0.0;
    bool incomplete = false;  // catalog empty or a required list missing
    bool pass = false;
    std::vector<zero_count_check> checks;
};

/// Expected number of critical-line ordinates in (0, T] for an
/// L-function of the given conductor: (T / 2 pi) log(cond T / (2 pi e)).
/// Conductor 1 gives the classical count of zeta zeros.
double expected_zero_count(u64 conductor, double T);

/// Finds every ordinate in (0, T] for a real primitive non-principal
/// character of conductor <= 10. Scans the rotated critical-line
/// function on a grid (initial spacing `step`) for sign changes and
/// bisects each bracket to width tol. If the resulting count misses the
/// expected density the grid is halved and rescanned, up to four times;
/// persistent mismatch raises accuracy_error naming the suspect
/// interval. The scan may run in `threads` concurrent chunks; results
/// are deterministic regardless of thread count.
zero_list find_zeros(const dirichlet_character& chi, double T, double tol,
                     double step = 0.05, unsigned threads = 1);

/// find_zeros for every non-principal character mod q (each must be real
/// and primitive, so q is 3 or 4 in practice); provenance = computed.
zero_catalog find_all_zeros(u64 q, double T, double tol, double step = 0.05,
                            unsigned threads = 1);

/// Parses the TSV zero format (see serialize_catalog). Raises
/// parse_error (with line number) on malformed lines or non-positive
/// ordinates, domain_error on labels not coprime to q, validation_error
/// on non-increasing ordinates, and incompleteness_error when any
/// non-principal character of q ends up with no list.
zero_catalog import_zeros(std::istream& in, u64 q);

/// Writes the catalog as TSV: header line `# q=<q> format=kprime-zeros-v1`
/// then `<q>\t<label>\t<gamma>` rows, labels ascending, ordinates
/// ascending, ordinates printed with 12 significant digits so that
/// serialize-import-serialize reproduces the bytes exactly.
void serialize_catalog(const zero_catalog& cat, std::ostream& out);

/// Per-list completeness report at height T: observed count in (0, T]
/// versus expected_zero_count for the character's conductor, tolerance
/// 2 log(qT), plus positivity/monotonicity checks. Requires every list
/// to reach height T. On pass, raises cat.validated_height to T.
validation_report validate(zero_catalog& cat, const character_group& g,
                           double T);

}  // namespace kprime
