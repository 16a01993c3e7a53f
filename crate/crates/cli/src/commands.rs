use std::fmt::Write as _;
use std::fs;

use eprsim_core::channels::{
    birefringence_operator, bmeson_evolution_operator, fiber_operator, kaon_evolution_operator, pdl_operator,
    BMesonSpec, BirefringenceSpec, FiberSpec, KaonSpec, PdlSpec,
};
use eprsim_core::correlations::{chsh_theta_scan, maximize_s, Choice, CorrelationSystem, Settings4};
use eprsim_core::montecarlo::{
    chsh_from_counts, estimate_e, run_chsh_counts, run_experiment, CoincidenceCounts, ExperimentConfig, PairSystem,
    QuantumSource, SettingsSpec,
};
use eprsim_core::state::{BlochVector, Operator2};

use crate::args::{
    Channel, FiberArm, MaximizeArgs, McSystem, MesonArgs, MonteCarloArgs, ScanArgs, ScanSystem, TrajectoryArgs, Unit,
};
use crate::error::CliError;
use crate::manifest::{Manifest, TOOL_VERSION};

const KAON_DELTA_M: f64 = 0.477;
const KAON_GAMMA_L_RATIO: f64 = 1.0 / 580.0;
const BMESON_DELTA_M: f64 = 0.723;

type Params = Vec<(String, String)>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Fixed 9 decimals, switching to exponent form below 1e-3 so small weights
/// keep their significant digits.
pub fn num(x: f64) -> String {
    let x = x + 0.0; // −0 prints as 0
    if x == 0.0 || x.abs() >= 1e-3 || !x.is_finite() {
        format!("{x:.9}")
    } else {
        format!("{x:.9e}")
    }
}

fn push(params: &mut Params, key: &str, value: impl ToString) {
    params.push((key.to_string(), value.to_string()));
}

fn vec_str(v: &BlochVector<f64>) -> String {
    format!("{},{},{}", v.x, v.y, v.z)
}

fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("not a number: {p:?} in {s:?}")))
        })
        .collect()
}

/// `x,y,z`, normalized to the unit sphere.
fn parse_vector(s: &str) -> Result<BlochVector<f64>, CliError> {
    match parse_list(s)?.as_slice() {
        &[x, y, z] => BlochVector::new(x, y, z)
            .normalized()
            .map_err(|_| usage(format!("vector {s:?} has zero length"))),
        _ => Err(usage(format!("expected x,y,z, got {s:?}"))),
    }
}

fn resolve_unit(unit: Option<Unit>, photon: bool) -> Result<Unit, CliError> {
    match (photon, unit) {
        (true, u) => Ok(u.unwrap_or(Unit::Deg)),
        (false, None) => Ok(Unit::Rad),
        (false, Some(_)) => Err(usage(
            "--unit applies to photon angles only; meson settings are times in 1/γ_S",
        )),
    }
}

fn to_internal(x: f64, unit: Unit) -> f64 {
    match unit {
        Unit::Deg => x.to_radians(),
        Unit::Rad => x,
    }
}

fn from_internal(x: f64, unit: Unit) -> f64 {
    match unit {
        Unit::Deg => x.to_degrees(),
        Unit::Rad => x,
    }
}

fn unit_name(unit: Unit) -> &'static str {
    match unit {
        Unit::Deg => "deg",
        Unit::Rad => "rad",
    }
}

fn kaon_spec(m: &MesonArgs, params: &mut Params) -> Result<KaonSpec<f64>, CliError> {
    let delta_m = m.delta_m.unwrap_or(KAON_DELTA_M);
    let ratio = m.gamma_l_ratio.unwrap_or(KAON_GAMMA_L_RATIO);
    push(params, "delta-m", delta_m);
    push(params, "gamma-l-ratio", ratio);
    Ok(KaonSpec::with_ratio(delta_m, ratio)?)
}

fn bmeson_spec(m: &MesonArgs, params: &mut Params) -> Result<BMesonSpec<f64>, CliError> {
    if m.gamma_l_ratio.is_some() {
        return Err(usage("--gamma-l-ratio does not apply to B mesons (equal widths)"));
    }
    let delta_m = m.delta_m.unwrap_or(BMESON_DELTA_M);
    push(params, "delta-m", delta_m);
    Ok(BMesonSpec::new(delta_m, 1.0)?)
}

fn no_meson_flags(m: &MesonArgs) -> Result<(), CliError> {
    if m.delta_m.is_some() || m.gamma_l_ratio.is_some() {
        return Err(usage("--delta-m and --gamma-l-ratio apply to meson systems only"));
    }
    Ok(())
}

fn scan_system(system: ScanSystem, m: &MesonArgs, params: &mut Params) -> Result<CorrelationSystem<f64>, CliError> {
    Ok(match system {
        ScanSystem::Photon => {
            no_meson_flags(m)?;
            CorrelationSystem::Photon
        }
        ScanSystem::Kaon => CorrelationSystem::Kaon(kaon_spec(m, params)?),
        ScanSystem::KaonNormalized => CorrelationSystem::KaonNormalized(kaon_spec(m, params)?),
        ScanSystem::Bmeson => CorrelationSystem::BMeson(bmeson_spec(m, params)?),
    })
}

fn scan_system_name(system: ScanSystem) -> &'static str {
    match system {
        ScanSystem::Photon => "photon",
        ScanSystem::Kaon => "kaon",
        ScanSystem::KaonNormalized => "kaon-normalized",
        ScanSystem::Bmeson => "bmeson",
    }
}

/// Writes `content` to `out` with its manifest, or to stdout.
fn emit(out: Option<&str>, content: &str, command: &str, seed: Option<u64>, params: Params) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| CliError::Io(format!("cannot write {path}: {e}")))?;
            Manifest {
                command: command.into(),
                tool_version: TOOL_VERSION.into(),
                seed,
                output: path.into(),
                params,
            }
            .write_for(path)
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn scan(args: &ScanArgs) -> Result<(), CliError> {
    let mut params = Params::new();
    push(&mut params, "system", scan_system_name(args.system));
    let system = scan_system(args.system, &args.meson, &mut params)?;
    let unit = resolve_unit(args.unit, args.system == ScanSystem::Photon)?;
    let (lo_default, hi_default) = system.scan_range();
    let lo = args.min.unwrap_or(from_internal(lo_default, unit));
    let hi = args.max.unwrap_or(from_internal(hi_default, unit));
    if args.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(usage(format!("invalid range [{lo}, {hi}]")));
    }
    if args.system != ScanSystem::Photon && lo < 0.0 {
        return Err(usage("meson scan parameters are times and must be non-negative"));
    }
    push(&mut params, "min", lo);
    push(&mut params, "max", hi);
    push(&mut params, "steps", args.steps);
    if args.system == ScanSystem::Photon {
        push(&mut params, "unit", unit_name(unit));
    }

    let records = chsh_theta_scan(&system, to_internal(lo, unit), to_internal(hi, unit), args.steps)?;
    let last = args.steps - 1;
    let mut csv = String::from("param,E,E3,S,abs_S,violates\n");
    for (i, r) in records.iter().enumerate() {
        // Same grid formula as the library, evaluated in the user's unit.
        let param = if i == last {
            hi
        } else {
            lo + (hi - lo) * i as f64 / last as f64
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            num(param),
            num(r.e),
            num(r.e3),
            num(r.s),
            num(r.abs_s()),
            u8::from(r.violates())
        );
    }
    emit(args.out.as_deref(), &csv, "scan", None, params)
}

pub fn trajectory(args: &TrajectoryArgs) -> Result<(), CliError> {
    let mut params = Params::new();
    let name = match args.channel {
        Channel::Birefringence => "birefringence",
        Channel::Pdl => "pdl",
        Channel::Fiber => "fiber",
        Channel::Kaon => "kaon",
        Channel::Bmeson => "bmeson",
    };
    push(&mut params, "channel", name);
    let start = match &args.start {
        Some(s) => parse_vector(s)?,
        None => BlochVector::new(1.0, 0.0, 0.0),
    };
    push(&mut params, "start", vec_str(&start));
    if !(args.length >= 0.0 && args.length.is_finite()) {
        return Err(usage("--length must be finite and non-negative"));
    }
    push(&mut params, "length", args.length);
    if args.length > 0.0 && args.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    push(&mut params, "steps", args.steps);

    let axis = match &args.axis {
        Some(s) => parse_vector(s)?,
        None => BlochVector::north(),
    };
    let pdl_axis = match &args.pdl_axis {
        Some(s) => parse_vector(s)?,
        None => axis,
    };
    let meson = matches!(args.channel, Channel::Kaon | Channel::Bmeson);
    if !meson {
        no_meson_flags(&args.meson)?;
    }
    if matches!(args.channel, Channel::Birefringence | Channel::Fiber) {
        push(&mut params, "axis", vec_str(&axis));
        push(&mut params, "rate", args.rate);
    }
    if matches!(args.channel, Channel::Pdl | Channel::Fiber) {
        push(&mut params, "pdl-axis", vec_str(&pdl_axis));
        push(&mut params, "alpha-max", args.alpha_max);
        push(&mut params, "alpha-min", args.alpha_min);
    }
    if args.channel == Channel::Kaon {
        push(&mut params, "no-decay", args.no_decay);
    }
    let kaon = match args.channel {
        Channel::Kaon if args.no_decay => {
            let dm = args.meson.delta_m.unwrap_or(KAON_DELTA_M);
            push(&mut params, "delta-m", dm);
            Some(KaonSpec::mixing_only(dm))
        }
        Channel::Kaon => Some(kaon_spec(&args.meson, &mut params)?),
        _ => None,
    };
    let bmeson = match args.channel {
        Channel::Bmeson => Some(bmeson_spec(&args.meson, &mut params)?),
        _ => None,
    };

    let operator = |z: f64| -> Result<Operator2<f64>, CliError> {
        Ok(match args.channel {
            Channel::Birefringence => birefringence_operator(&BirefringenceSpec::new(axis, args.rate, z)?),
            Channel::Pdl => pdl_operator(&PdlSpec::new(pdl_axis, args.alpha_max, args.alpha_min, z)?),
            Channel::Fiber => fiber_operator(&FiberSpec::new(
                axis,
                args.rate,
                pdl_axis,
                args.alpha_max,
                args.alpha_min,
                z,
            )?),
            Channel::Kaon => kaon_evolution_operator(kaon.as_ref().expect("kaon spec"), z)?,
            Channel::Bmeson => bmeson_evolution_operator(bmeson.as_ref().expect("B-meson spec"), z)?,
        })
    };
    // Validate the channel at full length before tracing.
    operator(args.length)?;

    let positions: Vec<f64> = if args.length == 0.0 {
        vec![0.0]
    } else {
        let last = args.steps - 1;
        (0..args.steps)
            .map(|i| {
                if i == last {
                    args.length
                } else {
                    args.length * i as f64 / last as f64
                }
            })
            .collect()
    };
    let mut csv = String::from("z,x,y,z_comp,weight\n");
    for z in positions {
        // Zero length is the identity; skip the spinor round trip so the row is exact.
        let (m, w) = if z == 0.0 {
            (start, 1.0)
        } else {
            operator(z)?.map_bloch(&start)?
        };
        // Meson rows use a frame with K_L on top: a half-turn about x keeps K⁰ at +x.
        let (x, y, zc) = if meson { (m.x, -m.y, -m.z) } else { (m.x, m.y, m.z) };
        let _ = writeln!(csv, "{},{},{},{},{}", num(z), num(x), num(y), num(zc), num(w));
    }
    emit(args.out.as_deref(), &csv, "trajectory", None, params)
}

fn counts_row(csv: &mut String, labels: (&str, &str), settings: (f64, f64), c: &CoincidenceCounts) {
    let (e, se) = match estimate_e(c) {
        Ok(est) => (num(est.value), num(est.std_error)),
        Err(_) => (String::new(), String::new()),
    };
    let _ = writeln!(
        csv,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        labels.0,
        labels.1,
        num(settings.0),
        num(settings.1),
        c.pp,
        c.pm,
        c.mp,
        c.mm,
        c.single_a_plus,
        c.single_a_minus,
        c.single_b_plus,
        c.single_b_minus,
        c.lost,
        e,
        se
    );
}

const COUNTS_HEADER: &str =
    "alice,bob,setting_a,setting_b,pp,pm,mp,mm,single_a_plus,single_a_minus,single_b_plus,single_b_minus,lost,E_R,SE\n";

pub fn montecarlo(args: &MonteCarloArgs) -> Result<(), CliError> {
    let mut params = Params::new();
    let photon = args.system == McSystem::Photon;
    let unit = resolve_unit(args.unit, photon)?;
    let given = parse_list(&args.settings)?;
    if given.len() != 2 && given.len() != 4 {
        return Err(usage(format!("--settings takes 2 or 4 values, got {}", given.len())));
    }
    push(
        &mut params,
        "system",
        match args.system {
            McSystem::Photon => "photon",
            McSystem::Kaon => "kaon",
            McSystem::Bmeson => "bmeson",
        },
    );
    push(
        &mut params,
        "settings",
        given.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
    );
    if photon {
        push(&mut params, "unit", unit_name(unit));
    }
    push(&mut params, "pairs", args.pairs);
    push(&mut params, "seed", args.seed);
    push(&mut params, "efficiency", args.efficiency);

    let system = match args.system {
        McSystem::Photon => {
            no_meson_flags(&args.meson)?;
            let fiber = match args.fiber_length {
                Some(length) => {
                    let axis = args
                        .fiber_axis
                        .as_deref()
                        .map(parse_vector)
                        .transpose()?
                        .unwrap_or(BlochVector::north());
                    let pdl_axis = args
                        .fiber_pdl_axis
                        .as_deref()
                        .map(parse_vector)
                        .transpose()?
                        .unwrap_or(axis);
                    let spec = FiberSpec::new(
                        axis,
                        args.fiber_rate,
                        pdl_axis,
                        args.fiber_alpha_max,
                        args.fiber_alpha_min,
                        length,
                    )?;
                    push(&mut params, "fiber-length", length);
                    push(
                        &mut params,
                        "fiber-arm",
                        match args.fiber_arm {
                            FiberArm::A => "a",
                            FiberArm::B => "b",
                            FiberArm::Both => "both",
                        },
                    );
                    push(&mut params, "fiber-axis", vec_str(&axis));
                    push(&mut params, "fiber-pdl-axis", vec_str(&pdl_axis));
                    push(&mut params, "fiber-rate", args.fiber_rate);
                    push(&mut params, "fiber-alpha-max", args.fiber_alpha_max);
                    push(&mut params, "fiber-alpha-min", args.fiber_alpha_min);
                    Some(spec)
                }
                None => None,
            };
            let on = |arm: FiberArm| fiber.filter(|_| args.fiber_arm == arm || args.fiber_arm == FiberArm::Both);
            PairSystem::Photon {
                arm_a: on(FiberArm::A),
                arm_b: on(FiberArm::B),
            }
        }
        McSystem::Kaon => PairSystem::Kaon(kaon_spec(&args.meson, &mut params)?),
        McSystem::Bmeson => PairSystem::BMeson(bmeson_spec(&args.meson, &mut params)?),
    };
    let internal: Vec<f64> = given.iter().map(|&x| to_internal(x, unit)).collect();
    let settings = if internal.len() == 2 {
        SettingsSpec::Pair {
            a: internal[0],
            b: internal[1],
        }
    } else {
        SettingsSpec::Chsh(Settings4::new(internal[0], internal[1], internal[2], internal[3]))
    };
    let config = ExperimentConfig {
        system,
        settings,
        pairs: args.pairs,
        efficiency: args.efficiency,
        seed: args.seed,
    };
    config.validate()?;

    let mut csv = String::from(COUNTS_HEADER);
    let summary = match settings {
        SettingsSpec::Pair { .. } => {
            let counts = run_experiment(&config)?;
            counts_row(&mut csv, ("a", "b"), (given[0], given[1]), &counts);
            emit(args.out.as_deref(), &csv, "montecarlo", Some(args.seed), params)?;
            let e = estimate_e(&counts)?;
            format!("E_R,SE\n{},{}", num(e.value), num(e.std_error))
        }
        SettingsSpec::Chsh(s) => {
            let terms = run_chsh_counts(
                &QuantumSource { system, settings: s },
                args.pairs,
                args.efficiency,
                args.seed,
            )?;
            for t in &terms {
                let (la, va) = match t.alice {
                    Choice::Unprimed => ("a", given[0]),
                    Choice::Primed => ("a'", given[1]),
                };
                let (lb, vb) = match t.bob {
                    Choice::Unprimed => ("b", given[2]),
                    Choice::Primed => ("b'", given[3]),
                };
                counts_row(&mut csv, (la, lb), (va, vb), &t.counts);
            }
            emit(args.out.as_deref(), &csv, "montecarlo", Some(args.seed), params)?;
            let est = chsh_from_counts(&terms)?;
            let first = est.correlations[0];
            format!(
                "E_R,SE,S,SE_S\n{},{},{},{}",
                num(first.value),
                num(first.std_error),
                num(est.abs_s),
                num(est.std_error)
            )
        }
    };
    println!("{summary}");
    Ok(())
}

pub fn maximize(args: &MaximizeArgs) -> Result<(), CliError> {
    let mut params = Params::new();
    let system = scan_system(args.system, &args.meson, &mut params)?;
    let best = maximize_s(&system)?;
    let argmax = if args.system == ScanSystem::Photon {
        best.argmax.to_degrees()
    } else {
        best.argmax
    };
    println!("{},{:.6},{:.6}", scan_system_name(args.system), argmax, best.value);
    Ok(())
}
