//! Tolerance constants used across the crate.
//!
//! Every threshold lives here so the acceptance suite and the CLI report the
//! same numbers they test against.

/// Max |rho - rho^dag| entry allowed in a density matrix.
pub const HERMITICITY: f64 = 1e-12;

/// Max |tr(rho) - 1| allowed in a density matrix.
pub const TRACE_ONE: f64 = 1e-12;

/// Eigenvalues in [-PSD_CLAMP, 0) count as roundoff and clamp to 0; anything
/// more negative is an invalid state.
pub const PSD_CLAMP: f64 = 1e-10;

/// Hermiticity slack accepted by the eigensolver.
pub const EIG_HERMITICITY: f64 = 1e-10;

/// Jacobi sweep convergence: off-diagonal Frobenius norm below this.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Entrywise agreement between closed-form reduced matrices and the numeric
/// dilation + partial-trace path.
pub const ORACLE_MATCH: f64 = 1e-12;

/// Partial-transpose eigenvalues above -NEGATIVITY_CLAMP count as zero when
/// summing negativity.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Correlation values in [-CORRELATION_CLAMP, 0) clamp to 0 (optimizer and
/// entropy roundoff); anything more negative is a logic bug.
pub const CORRELATION_CLAMP: f64 = 1e-6;

/// Mutual-information roundoff clamp.
pub const MUTUAL_INFO_CLAMP: f64 = 1e-9;

/// Measurement outcomes with probability below this contribute nothing to
/// conditional entropies.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-12;

/// Entries off the diagonal/anti-diagonal must stay below this for the
/// X-state concurrence formula to apply.
pub const X_FORM: f64 = 1e-10;

/// Bisection stops when the bracketing interval is shorter than this.
/// Tighter than the contracted 1e-8 so that nine printed decimals are exact.
pub const TRANSITION_INTERVAL: f64 = 1e-10;

/// |numeric discord - Eq.-style analytic discord| bound for Bell-diagonal
/// states under the non-dissipative channels.
pub const DISCORD_VS_ANALYTIC: f64 = 1e-4;

/// Row-wise identity I = K + Q and I = C + D in emitted CSV files.
pub const CSV_IDENTITY: f64 = 1e-9;
