#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matrix_io.hpp"
#include "ptlab/convert.hpp"
#include "ptlab/parallel.hpp"
#include "ptlab/symmetry.hpp"

namespace ptlab::cli {

namespace exit_code {
constexpr int ok = 0;
constexpr int internal = 1;
constexpr int parse = 2;
constexpr int dimension = 3;
constexpr int constraint = 4;
constexpr int mismatch = 5;
}  // namespace exit_code

enum class Format { Json, Csv };

struct RunConfig {
    ToleranceConfig tol;
    std::uint64_t seed = 42;
    Format format = Format::Json;
};

struct CommandResult {
    int exit_code = exit_code::ok;
    std::string output;
    /// Written to stderr by the front end.
    std::string diagnostic;
    /// Named matrices a command produced (construct writes them with --split-dir).
    std::map<std::string, ComplexMatrix> matrices;
};

CommandResult cmd_classify(const ComplexMatrix& h, const std::optional<ComplexMatrix>& op,
                           std::optional<SymmetryKind> kind, const RunConfig& cfg);

/// Families: pt2, pt2-r1, pt2-r2, pseudo2, pt2-jordan, pt-jordan, genpt2, cross, and the
/// seeded random families pt-block, pseudo-block, rotated-hermitian, genpt-diag,
/// self-adjoint-diag.
CommandResult cmd_construct(const std::string& family, const Json& params, const RunConfig& cfg);

/// Families: degeneration, pt2, pseudo2.
CommandResult cmd_sweep(const std::string& family, const Json& grid, const RunConfig& cfg,
                        Execution exec = Execution::Parallel);

CommandResult cmd_count(Index max_dim, const RunConfig& cfg);

CommandResult cmd_convert(ConversionDirection direction, const ComplexMatrix& op,
                          const ComplexMatrix& h, const RunConfig& cfg);

/// Without `lambda`, the first defective eigenvalue found by classify_spectrum is used.
CommandResult cmd_jordan(const ComplexMatrix& h, std::optional<Complex> lambda, Complex alpha,
                         const RunConfig& cfg);

/// Full command line, args[0] being the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptlab::cli
