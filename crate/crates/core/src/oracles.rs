//! Closed-form results used as independent test oracles: the reduced density
//! matrices of every (channel, bipartition) pair for Bell-diagonal initial
//! states, the per-channel chi, the analytic Bell-diagonal classical
//! correlation and discord, and the asymptotic GHZ fidelity.
//!
//! Shorthand below: q = 1 - p, q' = 1 - p/2, kappa = sqrt(p q' / 2),
//! a = (1 + c3)/4, b = (1 - c3)/4, u = (c1 - c2)/4, v = (c1 + c2)/4.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::states::{bell_diagonal_matrix, BellDiagonalParams};
use crate::tensor::{validate_density, ComplexMatrix, DensityMatrix};

/// One of the six pairs of the four-party system A, B, E_A, E_B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BipartitionLabel {
    AB,
    AEa,
    AEb,
    BEa,
    BEb,
    EaEb,
}

impl BipartitionLabel {
    pub const ALL: [BipartitionLabel; 6] = [
        BipartitionLabel::AB,
        BipartitionLabel::AEa,
        BipartitionLabel::AEb,
        BipartitionLabel::BEa,
        BipartitionLabel::BEb,
        BipartitionLabel::EaEb,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BipartitionLabel::AB => "AB",
            BipartitionLabel::AEa => "AEa",
            BipartitionLabel::AEb => "AEb",
            BipartitionLabel::BEa => "BEa",
            BipartitionLabel::BEb => "BEb",
            BipartitionLabel::EaEb => "EaEb",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == s)
    }

    /// Global-state factor indices of the pair, in named order.
    pub fn keep_indices(&self) -> [usize; 2] {
        match self {
            BipartitionLabel::AB => [0, 1],
            BipartitionLabel::AEa => [0, 2],
            BipartitionLabel::AEb => [0, 3],
            BipartitionLabel::BEa => [1, 2],
            BipartitionLabel::BEb => [1, 3],
            BipartitionLabel::EaEb => [2, 3],
        }
    }

    /// The partition with the same reduced state for symmetric (same channel,
    /// same p, Bell-diagonal) dynamics: B-side partitions mirror A-side ones.
    pub fn mirror(&self) -> Self {
        match self {
            BipartitionLabel::BEb => BipartitionLabel::AEa,
            BipartitionLabel::BEa => BipartitionLabel::AEb,
            other => *other,
        }
    }
}

impl fmt::Display for BipartitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn x_matrix(diag: [f64; 4], anti: [f64; 4]) -> ComplexMatrix {
    ComplexMatrix::from_rows_real(&[
        &[diag[0], 0.0, 0.0, anti[0]],
        &[0.0, diag[1], anti[1], 0.0],
        &[0.0, anti[1], diag[2], 0.0],
        &[anti[0], 0.0, 0.0, diag[3]],
    ])
}

fn amplitude_damping_reduced(part: BipartitionLabel, c: &BellDiagonalParams, p: f64) -> ComplexMatrix {
    let q = 1.0 - p;
    let a = (1.0 + c.c3) / 4.0;
    let b = (1.0 - c.c3) / 4.0;
    let u = (c.c1 - c.c2) / 4.0;
    let v = (c.c1 + c.c2) / 4.0;
    match part {
        BipartitionLabel::AB => x_matrix(
            [
                a * (1.0 + p * p) + 2.0 * b * p,
                q * (b + a * p),
                q * (b + a * p),
                a * q * q,
            ],
            [u * q, v * q, v * q, u * q],
        ),
        BipartitionLabel::AEa => {
            let s = (p * q).sqrt();
            ComplexMatrix::from_rows_real(&[
                &[0.5, 0.0, 0.0, 0.0],
                &[0.0, 0.5 * p, 0.5 * s, 0.0],
                &[0.0, 0.5 * s, 0.5 * q, 0.0],
                &[0.0, 0.0, 0.0, 0.0],
            ])
        }
        BipartitionLabel::AEb => {
            // The printed matrix omits the (01, 10) coherence v sqrt(pq); the
            // dilation produces it whenever c1 + c2 is nonzero.
            let s = (p * q).sqrt();
            x_matrix(
                [
                    a * (1.0 + p * q) + b,
                    p * (b + a * p),
                    q * (b + a * q),
                    a * p * q,
                ],
                [u * s, v * s, v * s, u * s],
            )
        }
        BipartitionLabel::EaEb => x_matrix(
            [
                a * (1.0 + q * q) + 2.0 * b * q,
                p * (b + a * q),
                p * (b + a * q),
                a * p * p,
            ],
            [u * p, v * p, v * p, u * p],
        ),
        BipartitionLabel::BEa | BipartitionLabel::BEb => unreachable!("mirrored before dispatch"),
    }
}

fn phase_damping_reduced(part: BipartitionLabel, c: &BellDiagonalParams, p: f64) -> ComplexMatrix {
    let q = 1.0 - p;
    let a = (1.0 + c.c3) / 4.0;
    let b = (1.0 - c.c3) / 4.0;
    let u = (c.c1 - c.c2) / 4.0;
    let v = (c.c1 + c.c2) / 4.0;
    match part {
        BipartitionLabel::AB => x_matrix([a, b, b, a], [u * q, v * q, v * q, u * q]),
        BipartitionLabel::AEa => {
            let s = (p * q).sqrt();
            ComplexMatrix::from_rows_real(&[
                &[0.5, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.5 * q, 0.5 * s],
                &[0.0, 0.0, 0.5 * s, 0.5 * p],
            ])
        }
        BipartitionLabel::AEb => {
            let s = (p * q).sqrt();
            ComplexMatrix::from_rows_real(&[
                &[a + b * q, b * s, 0.0, 0.0],
                &[b * s, b * p, 0.0, 0.0],
                &[0.0, 0.0, b + a * q, a * s],
                &[0.0, 0.0, a * s, a * p],
            ])
        }
        BipartitionLabel::EaEb => {
            let s = (p * q).sqrt();
            let edge = s * (b + a * q);
            let inner = p * (b + a * q);
            ComplexMatrix::from_rows_real(&[
                &[a + 2.0 * b * q + a * q * q, edge, edge, a * p * q],
                &[edge, inner, a * p * q, a * p * s],
                &[edge, a * p * q, inner, a * p * s],
                &[a * p * q, a * p * s, a * p * s, a * p * p],
            ])
        }
        BipartitionLabel::BEa | BipartitionLabel::BEb => unreachable!("mirrored before dispatch"),
    }
}

fn flip_reduced(
    kind: ChannelKind,
    part: BipartitionLabel,
    c: &BellDiagonalParams,
    p: f64,
) -> ComplexMatrix {
    let q = 1.0 - p;
    let q_prime = 1.0 - p / 2.0;
    let kappa = (p * q_prime / 2.0).sqrt();
    let axis = kind.protected_axis().expect("flip channel");
    // Bloch coefficient along the protected axis; the others shrink by q^2.
    let kept = match axis {
        1 => c.c1,
        2 => c.c2,
        _ => c.c3,
    };
    match part {
        BipartitionLabel::AB => {
            let q2 = q * q;
            let evolved = match kind {
                ChannelKind::BitFlip => BellDiagonalParams {
                    c1: c.c1,
                    c2: c.c2 * q2,
                    c3: c.c3 * q2,
                },
                ChannelKind::BitPhaseFlip => BellDiagonalParams {
                    c1: c.c1 * q2,
                    c2: c.c2,
                    c3: c.c3 * q2,
                },
                _ => BellDiagonalParams {
                    c1: c.c1 * q2,
                    c2: c.c2 * q2,
                    c3: c.c3,
                },
            };
            bell_diagonal_matrix(&evolved).matrix().clone()
        }
        BipartitionLabel::AEa | BipartitionLabel::AEb => {
            // AEa carries the coherence with weight 1; AEb scales it by the
            // protected-axis coefficient of the initial state.
            let weight = if part == BipartitionLabel::AEa { 1.0 } else { kept };
            let w = weight * kappa;
            match kind {
                ChannelKind::BitFlip => ComplexMatrix::from_rows_real(&[
                    &[0.5 * q_prime, 0.0, 0.0, 0.5 * w],
                    &[0.0, 0.25 * p, 0.5 * w, 0.0],
                    &[0.0, 0.5 * w, 0.5 * q_prime, 0.0],
                    &[0.5 * w, 0.0, 0.0, 0.25 * p],
                ]),
                ChannelKind::BitPhaseFlip => {
                    let iw = Complex64::new(0.0, 0.5 * w);
                    let z = Complex64::ZERO;
                    let qp = Complex64::new(0.5 * q_prime, 0.0);
                    let hp = Complex64::new(0.25 * p, 0.0);
                    ComplexMatrix::from_rows(&[
                        &[qp, z, z, -iw],
                        &[z, hp, -iw, z],
                        &[z, iw, qp, z],
                        &[iw, z, z, hp],
                    ])
                }
                _ => ComplexMatrix::from_rows_real(&[
                    &[0.5 * q_prime, 0.5 * w, 0.0, 0.0],
                    &[0.5 * w, 0.25 * p, 0.0, 0.0],
                    &[0.0, 0.0, 0.5 * q_prime, -0.5 * w],
                    &[0.0, 0.0, -0.5 * w, 0.25 * p],
                ]),
            }
        }
        BipartitionLabel::EaEb => {
            // D (x) D + kept (p q'/2) sigma_x (x) sigma_x, with the printed
            // "pq'2" entries read as p q' / 2 (trace normalization fixes it).
            let w = kept * p * q_prime / 2.0;
            x_matrix(
                [
                    q_prime * q_prime,
                    p * q_prime / 2.0,
                    p * q_prime / 2.0,
                    p * p / 4.0,
                ],
                [w, w, w, w],
            )
        }
        BipartitionLabel::BEa | BipartitionLabel::BEb => unreachable!("mirrored before dispatch"),
    }
}

/// The closed-form reduced density matrix of the named bipartition after both
/// qubits of the Bell-diagonal initial state pass the channel at time p.
pub fn closed_form_reduced(
    kind: ChannelKind,
    part: BipartitionLabel,
    c: &BellDiagonalParams,
    p: f64,
) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { p });
    }
    let c = BellDiagonalParams::new(c.c1, c.c2, c.c3)?;
    let part = part.mirror();
    let matrix = match kind {
        ChannelKind::AmplitudeDamping => amplitude_damping_reduced(part, &c, p),
        ChannelKind::PhaseDamping => phase_damping_reduced(part, &c, p),
        _ => flip_reduced(kind, part, &c, p),
    };
    validate_density(matrix, vec![2, 2])
}

/// Per-channel chi entering the analytic classical correlation: the protected
/// axis keeps |c_i|, the other two shrink by the squared per-side coherence
/// factor (q^2 for the flip channels, q for phase damping).
pub fn chi(kind: ChannelKind, c: &BellDiagonalParams, p: f64) -> Result<f64> {
    let q = 1.0 - p;
    let scaled = |factor: f64| -> [f64; 3] {
        [
            (c.c1 * factor).abs(),
            (c.c2 * factor).abs(),
            (c.c3 * factor).abs(),
        ]
    };
    let magnitudes = match kind {
        ChannelKind::AmplitudeDamping => return Err(Error::ChiUnsupported { kind }),
        ChannelKind::PhaseDamping => {
            let [c1, c2, _] = scaled(q);
            [c1, c2, c.c3.abs()]
        }
        ChannelKind::BitFlip => {
            let [_, c2, c3] = scaled(q * q);
            [c.c1.abs(), c2, c3]
        }
        ChannelKind::BitPhaseFlip => {
            let [c1, _, c3] = scaled(q * q);
            [c1, c.c2.abs(), c3]
        }
        ChannelKind::PhaseFlip => {
            let [c1, c2, _] = scaled(q * q);
            [c1, c2, c.c3.abs()]
        }
    };
    Ok(magnitudes.into_iter().fold(0.0, f64::max))
}

/// C(chi) = sum_{k=1,2} (1 + (-1)^k chi)/2 log2[1 + (-1)^k chi].
pub fn analytic_classical_correlation(chi_value: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&chi_value) {
        return Err(Error::ParameterOutOfRange { p: chi_value });
    }
    let term = |sign: f64| {
        let arg = 1.0 + sign * chi_value;
        if arg <= 0.0 {
            0.0
        } else {
            arg / 2.0 * arg.log2()
        }
    };
    Ok(term(-1.0) + term(1.0))
}

/// D = 2 + sum_k lambda_k log2 lambda_k - C(chi), with lambda_k the spectrum
/// of the evolved AB state.
pub fn analytic_discord(c: &BellDiagonalParams, p: f64, kind: ChannelKind) -> Result<f64> {
    let chi_value = chi(kind, c, p)?;
    let classical = analytic_classical_correlation(chi_value)?;
    let evolved = closed_form_reduced(kind, BipartitionLabel::AB, c, p)?;
    let lambdas = crate::eig::hermitian_eigenvalues(evolved.matrix())?;
    let entropy_sum: f64 = lambdas.iter().map(|&x| crate::optim::xlog2(x)).sum();
    let value = 2.0 + entropy_sum - classical;
    debug_assert!(value > -1e-9);
    Ok(value.max(0.0))
}

/// <psi_a| rho |psi_a> with |psi_a> = (|0101> - |1010>)/sqrt(2) in the
/// A, B, E_A, E_B ordering.
pub fn ghz_asymptote_fidelity(evolved: &DensityMatrix) -> Result<f64> {
    if evolved.dim() != 16 {
        return Err(Error::WrongDimension {
            expected: 16,
            dim: evolved.dim(),
        });
    }
    let plus = 0b0101;
    let minus = 0b1010;
    let value = 0.5
        * (evolved.get(plus, plus) + evolved.get(minus, minus)
            - evolved.get(plus, minus)
            - evolved.get(minus, plus));
    Ok(value.re)
}

/// Max entry deviation between the numeric dilation + partial-trace route and
/// the closed form, for one (channel, partition, parameters, p) cell.
pub fn equivalence_deviation(
    kind: ChannelKind,
    part: BipartitionLabel,
    c: &BellDiagonalParams,
    p: f64,
) -> Result<f64> {
    let closed = closed_form_reduced(kind, part, c, p)?;
    let numeric = evolve_and_extract(kind, part, c, p)?;
    Ok(closed.matrix().max_abs_diff(numeric.matrix()))
}

/// Numeric route: Bell-diagonal state, dilation on both sides, reduce.
pub fn evolve_and_extract(
    kind: ChannelKind,
    part: BipartitionLabel,
    c: &BellDiagonalParams,
    p: f64,
) -> Result<DensityMatrix> {
    let initial = crate::states::bell_diagonal_state(c)?;
    let channel = crate::channels::make_channel(kind, p)?;
    let global = crate::channels::dilate_and_evolve_global(&initial, &channel, &channel)?;
    crate::dynamics::extract_bipartition(&global, part)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(c1: f64, c2: f64, c3: f64) -> BellDiagonalParams {
        BellDiagonalParams::new(c1, c2, c3).unwrap()
    }

    #[test]
    fn amplitude_damping_system_environment_pair_at_half() {
        let rho = closed_form_reduced(
            ChannelKind::AmplitudeDamping,
            BipartitionLabel::AEa,
            &params(0.3, -0.2, 0.1),
            0.5,
        )
        .unwrap();
        let expected = ComplexMatrix::from_rows_real(&[
            &[0.5, 0.0, 0.0, 0.0],
            &[0.0, 0.25, 0.25, 0.0],
            &[0.0, 0.25, 0.25, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ]);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn phase_damping_endpoint_kills_coherences() {
        let c = params(0.5, -0.3, 0.2);
        let rho =
            closed_form_reduced(ChannelKind::PhaseDamping, BipartitionLabel::AB, &c, 1.0).unwrap();
        let expected = ComplexMatrix::diagonal(&[
            (1.0 + c.c3) / 4.0,
            (1.0 - c.c3) / 4.0,
            (1.0 - c.c3) / 4.0,
            (1.0 + c.c3) / 4.0,
        ]);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn amplitude_damping_transfers_state_to_reservoirs() {
        let c = params(-0.6, -0.6, -0.6);
        let rho =
            closed_form_reduced(ChannelKind::AmplitudeDamping, BipartitionLabel::EaEb, &c, 1.0)
                .unwrap();
        let initial = crate::states::bell_diagonal_state(&c).unwrap();
        assert_eq!(rho.matrix(), initial.matrix());
    }

    #[test]
    fn mirror_partitions_coincide() {
        let c = params(0.4, 0.1, -0.3);
        for kind in ChannelKind::ALL {
            let a_side =
                closed_form_reduced(kind, BipartitionLabel::AEa, &c, 0.3).unwrap();
            let b_side =
                closed_form_reduced(kind, BipartitionLabel::BEb, &c, 0.3).unwrap();
            assert_eq!(a_side.matrix(), b_side.matrix());
        }
    }

    #[test]
    fn chi_examples() {
        let c = params(0.2, 0.3, -0.5);
        assert!((chi(ChannelKind::PhaseFlip, &c, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((chi(ChannelKind::BitFlip, &c, 0.5).unwrap() - 0.2).abs() < 1e-15);
        // p = 0 reduces to the largest |c_i| for every supported kind.
        for kind in [
            ChannelKind::PhaseDamping,
            ChannelKind::BitFlip,
            ChannelKind::BitPhaseFlip,
            ChannelKind::PhaseFlip,
        ] {
            assert!((chi(kind, &c, 0.0).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!(matches!(
            chi(ChannelKind::AmplitudeDamping, &c, 0.5),
            Err(Error::ChiUnsupported { .. })
        ));
    }

    #[test]
    fn phase_damping_chi_tracks_single_power_of_q() {
        // Coherences decay by sqrt(q) per side under phase damping, so the
        // unprotected axes carry q, not q^2.
        let c = params(0.8, 0.0, 0.1);
        let p = 0.5;
        assert!((chi(ChannelKind::PhaseDamping, &c, p).unwrap() - 0.4).abs() < 1e-15);
        assert!((chi(ChannelKind::PhaseFlip, &c, p).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn classical_correlation_curve() {
        assert!(analytic_classical_correlation(0.0).unwrap().abs() < 1e-15);
        assert!((analytic_classical_correlation(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(
            (analytic_classical_correlation(0.5).unwrap() - 0.18872187554086717).abs() < 1e-14
        );
        assert!(analytic_classical_correlation(1.2).is_err());
    }

    #[test]
    fn analytic_discord_examples() {
        let singlet = params(-1.0, -1.0, -1.0);
        assert!(
            (analytic_discord(&singlet, 0.0, ChannelKind::PhaseDamping).unwrap() - 1.0).abs()
                < 1e-12
        );
        let classical = params(0.0, 0.0, 0.5);
        for p in [0.0, 0.3, 0.7, 1.0] {
            assert!(analytic_discord(&classical, p, ChannelKind::PhaseFlip).unwrap() < 1e-12);
        }
        let werner_half = params(-0.5, -0.5, -0.5);
        assert!(analytic_discord(&werner_half, 1.0, ChannelKind::PhaseDamping).unwrap() < 1e-12);
    }

    #[test]
    fn ghz_fidelity_examples() {
        let singlet = crate::states::werner_state(1.0).unwrap();
        for (p, expected) in [(0.0, 0.0), (0.25, 0.25), (0.5, 0.5), (1.0, 1.0)] {
            let ch = crate::channels::make_channel(ChannelKind::PhaseDamping, p).unwrap();
            let global =
                crate::channels::dilate_and_evolve_global(&singlet, &ch, &ch).unwrap();
            assert!(
                (ghz_asymptote_fidelity(&global).unwrap() - expected).abs() < 1e-12,
                "fidelity at p = {p}"
            );
        }
        let mixed = DensityMatrix::new_unchecked(
            ComplexMatrix::identity(16).scale(1.0 / 16.0),
            vec![2, 2, 2, 2],
        );
        assert!((ghz_asymptote_fidelity(&mixed).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        let small = crate::states::werner_state(0.0).unwrap();
        assert!(ghz_asymptote_fidelity(&small).is_err());
    }

    #[test]
    fn concurrence_root_sits_at_the_sudden_death_point() {
        // For c = (-0.6, -0.6, -0.6) the inner Lambda of the evolved AB state
        // vanishes at the root of p^2 + 8p - 8.
        let c = params(-0.6, -0.6, -0.6);
        let p_death = 24.0f64.sqrt() - 4.0;
        let at = |p: f64| {
            let rho =
                closed_form_reduced(ChannelKind::AmplitudeDamping, BipartitionLabel::AB, &c, p)
                    .unwrap();
            crate::measures::xstate_concurrence(&rho).unwrap()
        };
        assert!(at(p_death) < 1e-12);
        assert!(at(p_death - 1e-3) > 1e-5);
        assert!(at(p_death + 1e-3) == 0.0);
    }

    #[test]
    fn closed_forms_match_numerics_spot_check() {
        let c = params(0.35, -0.45, 0.15);
        for kind in ChannelKind::ALL {
            for part in BipartitionLabel::ALL {
                for p in [0.0, 0.3, 0.85, 1.0] {
                    let dev = equivalence_deviation(kind, part, &c, p).unwrap();
                    assert!(
                        dev < 1e-13,
                        "closed form vs numerics: {kind} {part} p = {p} deviates {dev:.3e}"
                    );
                }
            }
        }
    }
}
