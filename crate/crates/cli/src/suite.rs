//! The check suites behind `verify --suite <name>`.
//!
//! Every suite sweeps the configured field/dimension matrix, runs its
//! checks on deterministic seeded ensembles, and emits one aggregated
//! record per check and matrix cell. Exact identities must hold with zero
//! defect on every sample; theorem bounds with explicit constants are hard
//! pass/fail; hidden-constant statements are soft checks against the
//! configured constants, reported with their raw values.

use crate::config::{ExperimentConfig, ResolvedMode};
use crate::report::{CheckRecord, RecordBuilder, Report, Status};
use fqlab::cyclotomic::CycNum;
use fqlab::distlab::{
    self, ceil_q_pow,
    kstar::{kstar_mean_image, kstar_second_moment},
    pinned::{self, PairKind},
    slices, sumprod, CheckStatus,
};
use fqlab::fourier::{dft, idft, plancherel_defect, GridFunction};
use fqlab::gauss::{additive_char, gauss_sum, gauss_sum_closed_form};
use fqlab::grid::grid_size;
use fqlab::scalar::Scalar;
use fqlab::simplex::{self, CensusMode, Filters};
use fqlab::spheres;
use fqlab::{construct, Complex64, DetRng, Error, FieldSpec, Fq, PointSet, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Identities,
    Wolff,
    Pinned,
    Slices,
    Kstar,
    Simplex,
    Sumproduct,
    All,
}

impl std::str::FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => SuiteName::Identities,
            "wolff" => SuiteName::Wolff,
            "pinned" => SuiteName::Pinned,
            "slices" => SuiteName::Slices,
            "kstar" => SuiteName::Kstar,
            "simplex" => SuiteName::Simplex,
            "sumproduct" => SuiteName::Sumproduct,
            "all" => SuiteName::All,
            other => return Err(Error::SpecifierParse(format!("unknown suite {other}"))),
        })
    }
}

pub fn run_suite(name: SuiteName, cfg: &ExperimentConfig) -> Result<Report> {
    let mut records = Vec::new();
    match name {
        SuiteName::Identities => records.extend(identities(cfg)?),
        SuiteName::Wolff => records.extend(wolff(cfg)?),
        SuiteName::Pinned => records.extend(pinned_suite(cfg)?),
        SuiteName::Slices => records.extend(slices_suite(cfg)?),
        SuiteName::Kstar => records.extend(kstar_suite(cfg)?),
        SuiteName::Simplex => records.extend(simplex_suite(cfg)?),
        SuiteName::Sumproduct => records.extend(sumproduct_suite(cfg)?),
        SuiteName::All => {
            records.extend(identities(cfg)?);
            records.extend(wolff(cfg)?);
            records.extend(pinned_suite(cfg)?);
            records.extend(slices_suite(cfg)?);
            records.extend(kstar_suite(cfg)?);
            records.extend(simplex_suite(cfg)?);
            records.extend(sumproduct_suite(cfg)?);
        }
    }
    Ok(Report::new(cfg.clone(), records))
}

fn sample_seed(base: u64, tag: u64, i: u64) -> u64 {
    DetRng::stream(base, &[tag, i]).next_u64()
}

/// Seeded random E ⊆ F_q^d with size drawn from [1, q^d].
fn random_cell_set(field: &FieldSpec, d: u32, base_seed: u64, tag: u64, i: u64) -> PointSet {
    let n = grid_size(field.q(), d);
    let mut rng = DetRng::stream(base_seed, &[tag, field.q(), d as u64, i]);
    let size = 1 + rng.below(n);
    construct::random_set(field, d, size, rng.next_u64()).expect("size within grid")
}

fn builder(
    suite: &'static str,
    field: &FieldSpec,
    d: u32,
    set: impl Into<String>,
    mode: ResolvedMode,
    seed: u64,
) -> RecordBuilder {
    RecordBuilder {
        suite,
        q: field.q(),
        l: field.l(),
        d,
        set: set.into(),
        mode: mode.name(),
        seed,
    }
}

// ---------------------------------------------------------------- identities

fn identities(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for field in cfg.fields()? {
        let q = field.q();
        let b = builder("identities", &field, 1, "field", ResolvedMode::Exact, cfg.seed);

        // Gauss sum vs the classical evaluation, numerically
        let g: CycNum = gauss_sum(&field, Fq::ONE);
        let closed = gauss_sum_closed_form(&field);
        let err = (g.embed() - closed).norm();
        out.push(b.make(
            "gauss.closed_form",
            "gauss_sum_evaluation",
            b.pass_fail(err <= 1e-9),
            format!("{:.6}+{:.6}i", g.embed().re, g.embed().im),
            format!("{:.6}+{:.6}i", closed.re, closed.im),
            format!("{err:.3e}"),
        ));

        // G_a² = ψ(−1)·q exactly, for every a ≠ 0
        let want = CycNum::from_i64(field.psi_minus_one() as i64 * q as i64);
        let square_ok = (1..q).all(|a| {
            let ga: CycNum = gauss_sum(&field, Fq(a as u32));
            ga.mul(&ga) == want
        });
        out.push(b.make(
            "gauss.square",
            "gauss_sum_square",
            b.pass_fail(square_ok),
            "G_a^2 for all a≠0",
            format!("{}·q", field.psi_minus_one()),
            if square_ok { "0" } else { "mismatch" },
        ));

        // Σ_s χ(st) = q·[t=0], exactly
        let ortho_ok = (0..q).all(|t| {
            let mut acc = CycNum::zero();
            for s in 0..q {
                acc = acc.add(&additive_char::<CycNum>(&field, field.mul(Fq(s as u32), Fq(t as u32))));
            }
            let want = if t == 0 { CycNum::from_i64(q as i64) } else { CycNum::zero() };
            acc == want
        });
        out.push(b.make(
            "char.orthogonality",
            "character_orthogonality",
            b.pass_fail(ortho_ok),
            "sum over s of chi(st)",
            "q·[t=0]",
            if ortho_ok { "0" } else { "mismatch" },
        ));

        for &d in &cfg.ds {
            let n = grid_size(q, d);
            let cell = builder("identities", &field, d, "grid", ResolvedMode::Exact, cfg.seed);
            if cfg.caps.check_grid(ResolvedMode::Exact, n).is_err() {
                out.push(cell.make(
                    "identities.cell",
                    "grid_cap",
                    Status::Skipped,
                    n,
                    cfg.caps.grid_exact,
                    "q^d exceeds the exact grid cap",
                ));
                continue;
            }
            out.extend(identity_cell(cfg, &field, d)?);
        }
    }
    Ok(out)
}

fn identity_cell(cfg: &ExperimentConfig, field: &FieldSpec, d: u32) -> Result<Vec<CheckRecord>> {
    let q = field.q();
    let n = grid_size(q, d);
    let mut out = Vec::new();
    let cell = builder("identities", field, d, "grid", ResolvedMode::Exact, cfg.seed);

    let pack = distlab::shared_pack_with_spectra(field, d);

    // sphere partition and the closed-form point counts
    let partition_ok = pack.sizes.iter().sum::<u64>() == n;
    out.push(cell.make(
        "sphere.partition",
        "sphere_partition",
        cell.pass_fail(partition_ok),
        pack.sizes.iter().sum::<u64>(),
        n,
        0,
    ));
    let sizes_ok = (0..q).all(|t| {
        spheres::sphere_size_closed_form(field, d, Fq(t as u32)) == pack.sizes[t as usize]
    });
    out.push(cell.make(
        "sphere.size_closed_form",
        "sphere_point_count",
        cell.pass_fail(sizes_ok),
        "enumerated |S_t|",
        "closed form",
        if sizes_ok { "0" } else { "mismatch" },
    ));

    // the three sphere-sum identities
    let lemma = spheres::verify_sphere_lemma_with_pack(field, &pack);
    out.push(cell.make(
        "sphere.lemma_sizes",
        "sphere_l2_sizes",
        cell.pass_fail(lemma.identity_sizes),
        lemma.sum_sizes_sq,
        lemma.sum_sizes_sq_expected,
        0,
    ));
    out.push(cell.make(
        "sphere.lemma_l2",
        "sphere_l2_transform",
        cell.pass_fail(lemma.identity_l2),
        "sum over t of |S_t^(m)|^2, all m≠0",
        "q^{-d}-q^{-d-1}",
        lemma.l2_counterexample.map(|m| m.to_string()).unwrap_or_else(|| "0".into()),
    ));
    out.push(cell.make(
        "sphere.lemma_weighted",
        "sphere_weighted_sum",
        cell.pass_fail(lemma.identity_weighted),
        "sum over t of |S_t|·S_t^(m), all m≠0",
        "≤ 1-q^{-1}, rational",
        lemma.weighted_counterexample.map(|m| m.to_string()).unwrap_or_else(|| "0".into()),
    ));

    // closed-form sphere transform vs the direct one (all t, m)
    if q <= 9 {
        let spectra = pack.spectra.as_ref().expect("built with spectra");
        let mut ok = true;
        'outer: for t in 0..q {
            // the closed form depends on m only through ‖m‖ and the m=0 flag
            let mut by_norm: Vec<Option<CycNum>> = vec![None; q as usize];
            for m in 0..n {
                let m_norm = Fq(pack.norm_of[m as usize]);
                let closed = if m == 0 {
                    spheres::sphere_fourier_closed_form_by_norm::<CycNum>(
                        field, d, Fq(t as u32), m_norm, true,
                    )
                } else {
                    by_norm[m_norm.0 as usize]
                        .get_or_insert_with(|| {
                            spheres::sphere_fourier_closed_form_by_norm::<CycNum>(
                                field, d, Fq(t as u32), m_norm, false,
                            )
                        })
                        .clone()
                };
                if spectra[t as usize].normalized_value(m) != closed {
                    ok = false;
                    break 'outer;
                }
            }
        }
        out.push(cell.make(
            "sphere.fourier_closed_form",
            "sphere_transform_formula",
            cell.pass_fail(ok),
            "direct transform",
            "closed form",
            if ok { "0" } else { "mismatch" },
        ));
    }

    // transform round-trips and Plancherel across seeded samples
    let mut plancherel_exact_ok = true;
    let mut plancherel_float_worst = 0f64;
    let mut roundtrip_exact_ok = true;
    let mut roundtrip_float_worst = 0f64;
    for i in 0..cfg.samples {
        let e = random_cell_set(field, d, cfg.seed, 0xf0, i);
        let fe: GridFunction<CycNum> = GridFunction::indicator(&e);
        let spec_e = dft(field, &fe);
        plancherel_exact_ok &= plancherel_defect(&fe, &spec_e).is_zero();
        roundtrip_exact_ok &= idft(field, &spec_e) == fe;
        let ff: GridFunction<Complex64> = GridFunction::indicator(&e);
        let spec_f = dft(field, &ff);
        plancherel_float_worst = plancherel_float_worst.max(plancherel_defect(&ff, &spec_f).abs());
        roundtrip_float_worst = roundtrip_float_worst.max(ff.sup_distance(&idft(field, &spec_f)));
    }
    out.push(cell.make(
        "fourier.roundtrip_exact",
        "transform_inversion",
        cell.pass_fail(roundtrip_exact_ok),
        format!("{} samples", cfg.samples),
        "identity",
        0,
    ));
    let fb = builder("identities", field, d, "grid", ResolvedMode::Float, cfg.seed);
    out.push(fb.make(
        "fourier.roundtrip_float",
        "transform_inversion",
        fb.pass_fail(roundtrip_float_worst <= 1e-9),
        format!("{} samples", cfg.samples),
        "sup error ≤ 1e-9",
        format!("{roundtrip_float_worst:.3e}"),
    ));
    out.push(cell.make(
        "fourier.plancherel_exact",
        "plancherel",
        cell.pass_fail(plancherel_exact_ok),
        format!("{} samples", cfg.samples),
        "defect 0",
        0,
    ));
    out.push(fb.make(
        "fourier.plancherel_float",
        "plancherel",
        fb.pass_fail(plancherel_float_worst <= 1e-9),
        format!("{} samples", cfg.samples),
        "defect ≤ 1e-9",
        format!("{plancherel_float_worst:.3e}"),
    ));

    // spectral pair-count identity on seeded samples
    let mut spectral_ok = true;
    for i in 0..cfg.samples {
        let e = random_cell_set(field, d, cfg.seed, 0xa1, i);
        spectral_ok &= distlab::spectral_nu_check(field, &pack, &e)?.holds;
    }
    out.push(cell.make(
        "dist.spectral_nu",
        "pair_count_spectral_identity",
        cell.pass_fail(spectral_ok),
        format!("{} samples", cfg.samples),
        "defect 0",
        if spectral_ok { "0" } else { "mismatch" },
    ));

    // σ mass: Σ_t σ_E(t) = q^{−d}|E|, scaled to integers
    let mut sigma_ok = true;
    for i in 0..cfg.samples {
        let e = random_cell_set(field, d, cfg.seed, 0x51, i);
        let (_, profile) = spheres::sigma_profile_exact(field, &e);
        let mut total = fqlab::cyclotomic::Cyc::<i128>::zero();
        for w in &profile {
            total = total.add(w);
        }
        sigma_ok &= total == fqlab::cyclotomic::Cyc::<i128>::from_i64((n * e.len()) as i64);
    }
    out.push(cell.make(
        "sigma.mass",
        "sphere_energy_mass",
        cell.pass_fail(sigma_ok),
        format!("{} samples", cfg.samples),
        "q^{-d}|E|",
        if sigma_ok { "0" } else { "mismatch" },
    ));

    if d == 2 {
        let mut lemma_main_ok = true;
        for i in 0..cfg.samples {
            let e = random_cell_set(field, d, cfg.seed, 0x1e, i);
            lemma_main_ok &= distlab::lemma_main_check(field, &e)?.defect == 0;
        }
        out.push(cell.make(
            "dist.lemma_main",
            "planar_second_moment_identity",
            cell.pass_fail(lemma_main_ok),
            format!("{} samples", cfg.samples),
            "defect 0",
            if lemma_main_ok { "0" } else { "mismatch" },
        ));

        if q % 4 == 1 {
            let mut fz_ok = true;
            for i in 0..cfg.samples {
                let e = random_cell_set(field, d, cfg.seed, 0x0f, i);
                fz_ok &= distlab::nu_zero_closed_form(field, &e)? == 0;
            }
            out.push(cell.make(
                "dist.formulazero",
                "zero_distance_closed_form",
                cell.pass_fail(fz_ok),
                format!("{} samples", cfg.samples),
                "defect 0",
                if fz_ok { "0" } else { "mismatch" },
            ));
        }
    }
    Ok(out)
}

// --------------------------------------------------------------------- wolff

fn wolff(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for field in cfg.fields()? {
        let q = field.q();
        let size = ceil_q_pow(q, 4, 3);
        let b = builder(
            "wolff",
            &field,
            2,
            format!("random:size={size}"),
            ResolvedMode::Exact,
            cfg.seed,
        );
        if size > q * q {
            out.push(b.make("wolff.bound", "planar_distance_bound", Status::Skipped, size, q * q, "set larger than plane"));
            continue;
        }

        let mut statuses = Vec::new();
        let mut min_margin = f64::INFINITY;
        let mut threshold = 0.0;
        for i in 0..cfg.samples {
            let e = construct::random_set(&field, 2, size, sample_seed(cfg.seed, 0x30, i))?;
            let rep = distlab::wolff_check(&field, &e)?;
            threshold = rep.threshold;
            min_margin = min_margin.min(rep.margin);
            statuses.push(rep.status);
        }
        let status = if statuses.contains(&CheckStatus::Skipped) {
            Status::Skipped
        } else if statuses.iter().all(|s| *s == CheckStatus::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        out.push(b.make(
            "wolff.bound",
            "planar_distance_bound",
            status,
            format!("{} samples, |E|={size}", cfg.samples),
            format!("|Δ| > {threshold:.4}"),
            format!("{min_margin:.4}"),
        ));
        if q % 4 == 1 {
            out.push(b.make(
                "wolff.epsilon",
                "epsilon_formula",
                Status::Finding,
                format!("eps_{q}"),
                format!("{:.5}", distlab::wolff_epsilon(q)),
                "",
            ));
        }

        // restricted spectral energy: max_t≠0 σ_E(t) against √3|E|^{3/2}/q³
        if grid_size(q, 2) <= cfg.caps.grid_exact {
            let mut max_ratio = 0f64;
            for i in 0..cfg.samples {
                let e = construct::random_set(&field, 2, size, sample_seed(cfg.seed, 0x31, i))?;
                let rep = spheres::restriction_max(&field, &e)?;
                max_ratio = max_ratio.max(rep.ratio);
            }
            let guard = 1.0 + cfg.constants.restriction_guard / q as f64;
            out.push(b.make(
                "restriction.max_ratio",
                "restricted_energy_bound",
                b.pass_fail(max_ratio <= guard),
                format!("{max_ratio:.5}"),
                format!("{guard:.5}"),
                format!("{:.5}", guard - max_ratio),
            ));

            // Mattila functional diagnostics
            let e = construct::random_set(&field, 2, size, sample_seed(cfg.seed, 0x32, 0))?;
            let m = spheres::mattila_m(&field, &e)?;
            let bound = spheres::mattila_bound(&field, &e)?;
            out.push(b.make(
                "mattila.random",
                "spectral_moment_functional",
                Status::Finding,
                format!("M={}", m),
                format!("bound={}", bound),
                "",
            ));
            if q % 4 == 1 {
                let z = construct::isotropic_line(&field)?;
                let mz = spheres::mattila_m(&field, &z)?;
                out.push(b.make(
                    "mattila.isotropic_line",
                    "spectral_moment_functional",
                    Status::Finding,
                    format!("M={}", mz),
                    format!("|Δ(Z)|={}", distlab::distance_set(&field, &z)?.len()),
                    "",
                ));
            }
        }
    }
    Ok(out)
}

// -------------------------------------------------------------------- pinned

fn pinned_suite(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for field in cfg.fields()? {
        let q = field.q();
        for &d in &cfg.ds {
            let size = ceil_q_pow(q, d + 1, 2).min(grid_size(q, d));
            let b = builder(
                "pinned",
                &field,
                d,
                format!("random:size={size}"),
                ResolvedMode::Exact,
                cfg.seed,
            );
            let mut dist_mean_ok = true;
            let mut dot_mean_ok = true;
            let mut dist_l2_ok = true;
            let mut dot_l2_ok = true;
            let mut transform_ok = true;
            let mut worst_dist_mean = f64::INFINITY;
            let mut worst_dot_mean = f64::INFINITY;
            for i in 0..cfg.samples {
                let e = construct::random_set(&field, d, size, sample_seed(cfg.seed, 0x40, i))?;
                let ds = pinned::pin_statistics(&field, &e, PairKind::Distance, (q, 2))?;
                dist_mean_ok &= ds.mean_exceeds(q, 2);
                worst_dist_mean = worst_dist_mean.min(fqlab::scalar::rat_to_f64(&ds.mean));
                let dots = pinned::pin_statistics(&field, &e, PairKind::Dot, (q, 2))?;
                dot_mean_ok &= dots.mean_exceeds(q, 2);
                worst_dot_mean = worst_dot_mean.min(fqlab::scalar::rat_to_f64(&dots.mean));
                dist_l2_ok &= pinned::pinned_second_moment_check(&field, &e)?.holds;
                dot_l2_ok &= pinned::dot_second_moment_check(&field, &e)?.holds;
                // transform identity on a sampled pin and frequency
                let mut rng = DetRng::stream(cfg.seed, &[0x41, q, d as u64, i]);
                let members = e.members();
                let y = fqlab::GridPoint::decode(q, d, members[rng.below(members.len() as u64) as usize]);
                let t = field.element(rng.below(q));
                transform_ok &= pinned::eta_transform_check(&field, &e, &y, t)?;
            }
            out.push(b.make(
                "pinned.mean_distance",
                "pinned_distance_mean",
                b.pass_fail(dist_mean_ok),
                format!("min mean {worst_dist_mean:.4}"),
                format!("> {}", q as f64 / 2.0),
                format!("{:.4}", worst_dist_mean - q as f64 / 2.0),
            ));
            out.push(b.make(
                "pinned.mean_dot",
                "pinned_dot_mean",
                b.pass_fail(dot_mean_ok),
                format!("min mean {worst_dot_mean:.4}"),
                format!("> {}", q as f64 / 2.0),
                format!("{:.4}", worst_dot_mean - q as f64 / 2.0),
            ));
            out.push(b.make(
                "pinned.l2_distance",
                "pinned_distance_second_moment",
                b.pass_fail(dist_l2_ok),
                format!("{} samples", cfg.samples),
                "strict bound",
                if dist_l2_ok { "holds" } else { "violated" },
            ));
            out.push(b.make(
                "pinned.l2_dot",
                "pinned_dot_second_moment",
                b.pass_fail(dot_l2_ok),
                format!("{} samples", cfg.samples),
                "bound",
                if dot_l2_ok { "holds" } else { "violated" },
            ));
            out.push(b.make(
                "pinned.eta_transform",
                "pinned_dot_transform_identity",
                b.pass_fail(transform_ok),
                format!("{} samples", cfg.samples),
                "exact equality",
                if transform_ok { "0" } else { "mismatch" },
            ));
        }
    }
    Ok(out)
}

// -------------------------------------------------------------------- slices

fn slices_suite(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for field in cfg.fields()? {
        let q = field.q();
        for &d in &cfg.ds {
            // cartesian A^d with the smallest A meeting |E||E_z| ≥ q^d
            let m = ceil_q_pow(q, d, 2 * d - 1);
            let a: Vec<Fq> = (0..m).map(|i| field.element(i)).collect();
            let sets: Vec<Vec<Fq>> = (0..d).map(|_| a.clone()).collect();
            let e = construct::cartesian_product(&field, &sets)?;
            let b = builder(
                "slices",
                &field,
                d,
                format!("product:[0..{m})^{d}"),
                ResolvedMode::Exact,
                cfg.seed,
            );
            let zs: Vec<u64> = cfg.z.map(|z| vec![z % q]).unwrap_or_else(|| vec![0, 1]);
            for &z in &zs {
                let z = field.element(z);
                let dist = slices::slice_pinned_check(&field, &e, z, PairKind::Distance)?;
                out.push(b.make(
                    format!("slice.mean_distance.z{}", z.index()),
                    "slice_pinned_distance_mean",
                    to_status(dist.status),
                    format!("mean {}", dist.mean),
                    format!("> {}", dist.threshold),
                    format!("pool {}", dist.pool_size),
                ));
                if z != Fq::ZERO {
                    let dot = slices::slice_pinned_check(&field, &e, z, PairKind::Dot)?;
                    out.push(b.make(
                        format!("slice.mean_dot.z{}", z.index()),
                        "slice_pinned_dot_mean",
                        to_status(dot.status),
                        format!("mean {}", dot.mean),
                        format!("> {}", dot.threshold),
                        format!("pool {}", dot.pool_size),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn to_status(s: CheckStatus) -> Status {
    match s {
        CheckStatus::Pass => Status::Pass,
        CheckStatus::Fail => Status::Fail,
        CheckStatus::Skipped => Status::Skipped,
    }
}

// --------------------------------------------------------------------- kstar

fn kstar_suite(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let ks: Vec<u32> = cfg.k.map(|k| vec![k]).unwrap_or_else(|| vec![2, 3]);
    for field in cfg.fields()? {
        let q = field.q();
        for &d in &cfg.ds {
            let n = grid_size(q, d);
            let size = n.div_ceil(3).clamp(4.min(n), 60);
            let b = builder(
                "kstar",
                &field,
                d,
                format!("random:size={size}"),
                ResolvedMode::Exact,
                cfg.seed,
            );
            let e = construct::random_set(&field, d, size, sample_seed(cfg.seed, 0x60, q + d as u64))?;

            // k = 1 must reproduce the pinned sweeps exactly
            let k1 = kstar_second_moment(&field, &e, 1, PairKind::Distance)?;
            let ps = pinned::pinned_second_moment_check(&field, &e)?;
            let k1d = kstar_second_moment(&field, &e, 1, PairKind::Dot)?;
            let pd = pinned::dot_second_moment_check(&field, &e)?;
            let consistent = k1.lhs == ps.lhs && k1d.lhs == pd.lhs;
            out.push(b.make(
                "kstar.consistency_k1",
                "kstar_reduces_to_pinned",
                b.pass_fail(consistent),
                k1.lhs,
                ps.lhs,
                if consistent { "0" } else { "mismatch" },
            ));

            for &k in &ks {
                for (kind, label) in [(PairKind::Distance, "dist"), (PairKind::Dot, "dot")] {
                    let rep = kstar_second_moment(&field, &e, k, kind)?;
                    out.push(b.make(
                        format!("kstar.second_moment.{label}.k{k}"),
                        "kstar_second_moment_bound",
                        b.pass_fail(rep.ratio <= cfg.constants.moment_ratio),
                        format!("ratio {:.4}", rep.ratio),
                        format!("≤ {}", cfg.constants.moment_ratio),
                        format!("lhs {}", rep.lhs),
                    ));
                }
            }

            // mean image over the full grid (hypothesis |E| ≥ q^{(d+k)/2}
            // holds for k ≤ d); soft proportion constant
            let grid_set = construct::grid(&field, d);
            let k = 2.min(d);
            if n.pow(k + 1) <= cfg.caps.tuples {
                let rep = kstar_mean_image(&field, &grid_set, k, PairKind::Distance, false, cfg.caps.tuples, None)?;
                let want = cfg.constants.proportion * (q as f64).powi(k as i32);
                let mean = fqlab::scalar::rat_to_f64(&rep.mean);
                let gb = builder("kstar", &field, d, "grid", ResolvedMode::Exact, cfg.seed);
                out.push(gb.make(
                    format!("kstar.mean_image.k{k}"),
                    "kstar_mean_image",
                    gb.pass_fail(mean >= want),
                    format!("mean {mean:.4}"),
                    format!("≥ {want:.4}"),
                    format!("{:.4}", mean - want),
                ));
            }

            // unit-sphere variant: E = S₁, k = 1
            if d >= 2 {
                let s1 = construct::sphere_full(&field, d, Fq::ONE);
                if !s1.is_empty() && (s1.len() as u128).pow(2) <= cfg.caps.tuples as u128 {
                    let rep = kstar_mean_image(&field, &s1, 1, PairKind::Distance, true, cfg.caps.tuples, None)?;
                    let want = cfg.constants.proportion * q as f64;
                    let mean = fqlab::scalar::rat_to_f64(&rep.mean);
                    let sb = builder("kstar", &field, d, "sphere:t=1", ResolvedMode::Exact, cfg.seed);
                    out.push(sb.make(
                        "kstar.mean_image_sphere.k1",
                        "kstar_mean_image_sphere",
                        sb.pass_fail(mean >= want),
                        format!("mean {mean:.4}"),
                        format!("≥ {want:.4}"),
                        format!("{:.4}", mean - want),
                    ));
                }
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------- simplex

fn simplex_suite(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for field in cfg.fields()? {
        let q = field.q();
        let d = 2u32;
        let b = builder("simplex", &field, d, "grid", ResolvedMode::Exact, cfg.seed);

        // grid 1-simplices: the nonzero distances each appear, zero never
        let grid_set = construct::grid(&field, d);
        if grid_size(q, d).pow(2) <= cfg.caps.tuples {
            let census = simplex::simplex_census(
                &field, &grid_set, 1, Filters::NONDEGENERATE, CensusMode::Exact, cfg.caps.tuples,
            )?;
            out.push(b.make(
                "simplex.census_grid_k1",
                "grid_segment_census",
                b.pass_fail(census == q - 1),
                census,
                q - 1,
                0,
            ));
        }

        // canonical keys vs the orbit-bucketing oracle on seeded sets
        let mut oracle_ok = true;
        let mut invariance_ok = true;
        let mut monotone_ok = true;
        for i in 0..cfg.samples {
            let size = 6 + i % 6;
            let e = construct::random_set(&field, d, size.min(grid_size(q, d)), sample_seed(cfg.seed, 0x70, i))?;
            for k in [1u32, 2] {
                let fast = simplex::simplex_census(&field, &e, k, Filters::NONDEGENERATE, CensusMode::Exact, cfg.caps.tuples)?;
                let slow = simplex::census_oracle(&field, &e, k, Filters::NONDEGENERATE, cfg.caps.tuples)?;
                oracle_ok &= fast == slow;
                // isometry invariance
                let o = simplex::random_orthogonal(&field, d, sample_seed(cfg.seed, 0x71, i));
                let tau = fqlab::GridPoint::decode(q, d, sample_seed(cfg.seed, 0x72, i) % grid_size(q, d));
                let moved = simplex::apply_isometry(&field, &e, &o, &tau);
                let c2 = simplex::simplex_census(&field, &moved, k, Filters::NONDEGENERATE, CensusMode::Exact, cfg.caps.tuples)?;
                invariance_ok &= c2 == fast;
                // monotone under inclusion
                if e.len() > 2 {
                    let sub = PointSet::from_indices(q, d, e.members().into_iter().take(e.len() as usize - 2));
                    let cs = simplex::simplex_census(&field, &sub, k, Filters::NONDEGENERATE, CensusMode::Exact, cfg.caps.tuples)?;
                    monotone_ok &= cs <= fast;
                }
            }
        }
        let rb = builder("simplex", &field, d, "random", ResolvedMode::Exact, cfg.seed);
        out.push(rb.make(
            "simplex.oracle_equivalence",
            "census_orbit_oracle",
            rb.pass_fail(oracle_ok),
            format!("{} samples, k ∈ {{1,2}}", cfg.samples),
            "equal counts",
            if oracle_ok { "0" } else { "mismatch" },
        ));
        out.push(rb.make(
            "simplex.isometry_invariance",
            "census_rigid_invariance",
            rb.pass_fail(invariance_ok),
            format!("{} samples", cfg.samples),
            "equal counts",
            if invariance_ok { "0" } else { "mismatch" },
        ));
        out.push(rb.make(
            "simplex.monotone",
            "census_monotonicity",
            rb.pass_fail(monotone_ok),
            format!("{} samples", cfg.samples),
            "subset census ≤",
            if monotone_ok { "0" } else { "mismatch" },
        ));

        // subfield sharpness: census over (F_p)^d stays within p^{k(k+1)/2}
        if field.l() % 2 == 0 {
            for d in [2u32, 3] {
                let e = construct::subfield_power(&field, d)?;
                if (e.len() as u128).pow(3) <= cfg.caps.tuples as u128 {
                    let census = simplex::simplex_census(&field, &e, 2, Filters::NONDEGENERATE, CensusMode::Exact, cfg.caps.tuples)?;
                    let sub_order = field.p().pow(field.l() / 2);
                    let bound = sub_order.pow(3);
                    let sb = builder("simplex", &field, d, "subfield", ResolvedMode::Exact, cfg.seed);
                    out.push(sb.make(
                        "simplex.subfield_bound",
                        "subfield_census_sharpness",
                        sb.pass_fail(census <= bound),
                        census,
                        bound,
                        (bound - census.min(bound)).to_string(),
                    ));
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- sumproduct

fn sumproduct_suite(cfg: &ExperimentConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for field in cfg.fields()? {
        let q = field.q();
        for &d in &cfg.ds {
            if d < 2 {
                continue;
            }
            // scan: A of size ⌈q^{d/(2d−1)}⌉ drawn from F_q^*
            let size = ceil_q_pow(q, d, 2 * d - 1).min(q - 1);
            let b = builder(
                "sumproduct",
                &field,
                d,
                format!("randomA:size={size}"),
                ResolvedMode::Exact,
                cfg.seed,
            );
            let mut min_fraction = f64::INFINITY;
            let mut ok = true;
            for i in 0..cfg.samples {
                let a = random_nonzero_subset(&field, size, sample_seed(cfg.seed, 0x80, i));
                let z = field.element((cfg.z.unwrap_or(1) % q).max(1));
                let rep = sumprod::sum_product_scan(&field, &a, z, d, cfg.caps.tuples, None)?;
                let frac = fqlab::scalar::rat_to_f64(&rep.fraction);
                min_fraction = min_fraction.min(frac);
                ok &= frac >= cfg.constants.proportion;
            }
            out.push(b.make(
                "sp.scan_fraction",
                "linear_sumset_scan",
                b.pass_fail(ok),
                format!("min fraction {min_fraction:.4}"),
                format!("≥ {}", cfg.constants.proportion),
                format!("{:.4}", min_fraction - cfg.constants.proportion),
            ));

            // d-fold product-sum coverage at |A| ≥ q^{d/(2d−1)}: at least q/2
            let mut cover_ok = true;
            let mut min_cover = u64::MAX;
            for i in 0..cfg.samples {
                let a = random_nonzero_subset(&field, size, sample_seed(cfg.seed, 0x81, i));
                let s = sumprod::product_sumset(&field, &a, d)?;
                let covered = sumprod::fq_set_size(&s);
                min_cover = min_cover.min(covered);
                cover_ok &= 2 * covered >= q;
            }
            out.push(b.make(
                "sp.product_sum_half",
                "iterated_product_sum_size",
                b.pass_fail(cover_ok),
                format!("min |A·A+…| = {min_cover}"),
                format!("≥ {}", q.div_ceil(2)),
                "",
            ));
        }

        // planar containment: |A| > q^{3/4} gives A·A + A·A ⊇ F_q^*
        let mut size = ceil_q_pow(q, 3, 4);
        if (size as u128).pow(4) == (q as u128).pow(3) {
            size += 1; // the hypothesis is strict
        }
        if size < q {
            let b = builder(
                "sumproduct",
                &field,
                2,
                format!("randomA:size={size}"),
                ResolvedMode::Exact,
                cfg.seed,
            );
            let mut ok = true;
            for i in 0..cfg.samples {
                let a = random_nonzero_subset(&field, size, sample_seed(cfg.seed, 0x82, i));
                let s = sumprod::product_sumset(&field, &a, 2)?;
                ok &= (1..q).all(|t| s[t as usize]);
            }
            out.push(b.make(
                "sp.containment",
                "two_fold_product_sum_covers_nonzero",
                b.pass_fail(ok),
                format!("{} samples, |A|={size}", cfg.samples),
                "⊇ F_q^*",
                if ok { "covered" } else { "missed" },
            ));
        }
    }
    Ok(out)
}

fn random_nonzero_subset(field: &FieldSpec, size: u64, seed: u64) -> sumprod::FqSet {
    let mut rng = DetRng::stream(seed, &[0xa5, field.q()]);
    let picks = rng.distinct(field.q() - 1, size.min(field.q() - 1));
    let elems: Vec<Fq> = picks.into_iter().map(|i| field.element(i + 1)).collect();
    sumprod::fq_set_from(field, &elems)
}
