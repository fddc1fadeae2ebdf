//! Command handlers.

use std::path::Path;
use std::time::Instant;

use serde_json::json;

use msf_analysis::{
    approximation_order_tol, balance_order_tol, coding_gain, default_prefilter, detect_symmetry, frequency_response,
    gmp_order_111_tol, sobolev, symmetry_class,
};
use msf_bauer::{spectral_factor, sweep, toeplitz_singular_values, SpectralFactor, PIVOT_REL_TOL};
use msf_filters::{builtin, sa4_family, FilterBank, PrefilterPair};
use msf_lpoly::{product_filter, ProductFilter, DEFAULT_TOL};
use msf_mwt::experiments::{add_noise, random_image, roundtrip_mae_1d, synthetic_image};
use msf_mwt::{
    analyze2d, analyze_signal, estimate_sigma2d, hard_threshold2d, mae, psnr, read_csv, read_pgm, synthesize2d,
    test_signal, write_csv, write_pgm, GrayImage, MwtError, PgmFormat, ORTHO_WARN,
};
use msf_recover::{error_report, recover_approximate, recover_exact, ErrorReport, RecoveryResult, RANK_TOL};

use crate::docs::{
    bank_text, compare_bank, compare_product, digest, emit, load_bank, load_product, num, parse_sizes, product_text,
    read_file, Comparison, InputDigest,
};
use crate::error::{CliError, Result};
use crate::report::{finite, RunReport};
use crate::{
    AnalyzeArgs, Cli, Command, CompareArgs, DenoiseArgs, FactorizeArgs, GenArgs, ImageKind, Method, Metric, PgmKind,
    PrefilterKind, ProductArgs, RecoverArgs, SweepArgs, TransformArgs, TransformCommon, Variant,
};

/// Runs `cli`; `echo` is recorded in the report.
pub fn run(cli: Cli, echo: Vec<String>) -> Result<()> {
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    let analyze_out = match &cli.command {
        Command::Analyze(a) => Some(a.out.clone()),
        _ => None,
    };
    match cli.command {
        Command::Gen(a) => gen(a, &mut report)?,
        Command::Product(a) => product(a, &mut report)?,
        Command::Factorize(a) => factorize(a, &mut report)?,
        Command::Sweep(a) => sweep_cmd(a, &mut report)?,
        Command::Recover(a) => recover(a, &mut report)?,
        Command::Analyze(a) => analyze(a, &mut report)?,
        Command::Transform(a) => transform(a, &mut report)?,
        Command::Denoise(a) => denoise(a, &mut report)?,
    }
    if cli.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    if let Some(out) = analyze_out {
        emit(out.as_deref(), report.to_text().as_bytes())?;
    }
    if let Some(path) = &cli.report {
        emit(Some(path), report.to_text().as_bytes())?;
    }
    Ok(())
}

fn check_comparison(c: &Comparison) -> Result<()> {
    if c.failures > 0 {
        return Err(CliError::Numeric(format!(
            "{} of {} cells differ from {} by more than {:e} (max {:e})",
            c.failures, c.cells, c.golden, c.tolerance, c.max_abs_diff
        )));
    }
    Ok(())
}

fn compare_bank_flag(b: &FilterBank, args: &CompareArgs, report: &mut RunReport) -> Result<()> {
    if let Some(golden) = &args.compare {
        let c = compare_bank(b, golden, args.compare_tol)?;
        report.tol("compare_tol", args.compare_tol);
        report.results["comparison"] = serde_json::to_value(&c)?;
        check_comparison(&c)?;
    }
    Ok(())
}

fn pgm_format(kind: PgmKind) -> PgmFormat {
    match kind {
        PgmKind::Ascii => PgmFormat::Ascii,
        PgmKind::Binary => PgmFormat::Binary,
    }
}

fn pgm_bytes(img: &GrayImage, format: PgmFormat) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_pgm(&mut buf, img, format)?;
    Ok(buf)
}

fn gen(a: GenArgs, report: &mut RunReport) -> Result<()> {
    if let Some(crate::Family::Sa4) = a.family {
        let t = a.t.expect("clap requires --t");
        if !t.is_finite() {
            return Err(CliError::Usage(format!("sa4 parameter t must be finite, got {t}")));
        }
        let b = sa4_family(t)?;
        report.results = json!({"kind": "bank", "family": "sa4", "t": t, "name": b.name(), "r": b.r(), "taps": b.n() + 1,
            "orthogonality_defect": b.orthogonality_defect()});
        compare_bank_flag(&b, &a.compare, report)?;
        return emit(a.out.as_deref(), bank_text(&b).as_bytes());
    }
    if let Some(name) = &a.name {
        let b = builtin(name)?;
        report.results = json!({"kind": "bank", "name": b.name(), "r": b.r(), "taps": b.n() + 1,
            "orthogonality_defect": b.orthogonality_defect()});
        compare_bank_flag(&b, &a.compare, report)?;
        return emit(a.out.as_deref(), bank_text(&b).as_bytes());
    }
    if let Some(signal) = &a.signal {
        let x = test_signal(signal, a.length)?;
        let mut buf = Vec::new();
        write_csv(&mut buf, &x)?;
        report.results = json!({"kind": "signal", "name": signal, "length": a.length});
        return emit(a.out.as_deref(), &buf);
    }
    let img = match a.image.expect("clap requires one source") {
        ImageKind::Synthetic => synthetic_image(a.size),
        ImageKind::Random => {
            report.seed = Some(a.seed);
            random_image(a.size, a.size, a.seed)
        }
    };
    report.results = json!({"kind": "image", "width": img.width, "height": img.height});
    emit(a.out.as_deref(), &pgm_bytes(&img, pgm_format(a.format))?)
}

fn product(a: ProductArgs, report: &mut RunReport) -> Result<()> {
    let (b, input) = load_bank(&a.bank)?;
    report.inputs.push(input);
    let p = product_filter(b.lowpass());
    report.tol("halfband_tol", DEFAULT_TOL);
    report.results = json!({"r": p.r(), "n": p.n(), "halfband": p.is_halfband(DEFAULT_TOL)});
    if let Some(golden) = &a.compare.compare {
        let c = compare_product(&p, golden, a.compare.compare_tol)?;
        report.tol("compare_tol", a.compare.compare_tol);
        report.results["comparison"] = serde_json::to_value(&c)?;
        check_comparison(&c)?;
    }
    emit(a.out.as_deref(), product_text(&p)?.as_bytes())
}

fn factor_bank(s: &SpectralFactor) -> Result<FilterBank> {
    Ok(FilterBank::new(format!("bauer-f{}", s.f), s.taps.clone(), None)?)
}

fn factorize(a: FactorizeArgs, report: &mut RunReport) -> Result<()> {
    let (p, input) = load_product(&a.product)?;
    report.inputs.push(input);
    report.tol("pivot_rel_tol", PIVOT_REL_TOL);
    let s = spectral_factor(&p, a.size)?;
    let bank = factor_bank(&s)?;
    report.results = json!({"f": s.f, "r": p.r(), "taps": s.taps.taps().len(), "residual": s.residual});
    if a.report_residual {
        eprintln!("residual {}", num(s.residual));
    }
    if a.singular_values {
        let sv = toeplitz_singular_values(&p, a.size)?;
        let mut csv = String::from("index,sigma\n");
        for (i, v) in sv.iter().enumerate() {
            csv.push_str(&format!("{},{}\n", i + 1, num(*v)));
        }
        report.results["singular_values"] = json!(sv.len());
        emit(a.sv_out.as_deref(), csv.as_bytes())?;
    }
    compare_bank_flag(&bank, &a.compare, report)?;
    if a.out.is_some() || !a.singular_values || a.sv_out.is_some() {
        emit(a.out.as_deref(), bank_text(&bank).as_bytes())?;
    }
    Ok(())
}

fn error_json(e: &ErrorReport) -> serde_json::Value {
    json!({
        "mae_mf": e.mae_mf, "mse_mf": e.mse_mf,
        "mae_mwf": e.mae_mwf, "mse_mwf": e.mse_mwf,
        "mae_mc": e.mae_mc, "mse_mc": e.mse_mc,
    })
}

/// Angle `θ` with the `even` and `odd` arguments it was computed from.
type Angle = (f64, f64, f64);

fn recoveries(s: &SpectralFactor, method: Method) -> Result<(Vec<RecoveryResult>, Option<Angle>)> {
    Ok(match method {
        Method::Approx => (vec![recover_approximate(s)?], None),
        Method::Exact => {
            let e = recover_exact(s)?;
            (vec![e.rotated, e.averaged], Some((e.theta, e.even, e.odd)))
        }
    })
}

fn sweep_cmd(a: SweepArgs, report: &mut RunReport) -> Result<()> {
    let (p, input) = load_product(&a.product)?;
    report.inputs.push(input);
    let reference = match &a.reference {
        Some(r) => {
            let (b, d) = load_bank(r)?;
            report.inputs.push(d);
            Some(b)
        }
        None => None,
    };
    let sizes = parse_sizes(&a.sizes)?;
    report.tol("pivot_rel_tol", PIVOT_REL_TOL);
    report.tol("rank_tol", RANK_TOL);
    let mut csv = String::from("f,method,status,residual,theta,mae_mf,mse_mf,mae_mwf,mse_mwf\n");
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let mut rows = 0usize;
    for record in sweep(&p, &sizes) {
        let outcome = record
            .result
            .map_err(CliError::from)
            .and_then(|s| recoveries(&s, a.recover).map(|r| (s, r)));
        match outcome {
            Ok((s, (banks, angle))) => {
                for r in banks {
                    let e = match &reference {
                        Some(reference) => Some(error_report(&r.bank, reference)?),
                        None => None,
                    };
                    csv.push_str(&format!(
                        "{},{},ok,{},{},{},{},{},{}\n",
                        s.f,
                        r.method.label(),
                        num(s.residual),
                        opt(angle.map(|x| x.0)),
                        opt(e.as_ref().map(|e| e.mae_mf)),
                        opt(e.as_ref().map(|e| e.mse_mf)),
                        opt(e.as_ref().and_then(|e| e.mae_mwf)),
                        opt(e.as_ref().and_then(|e| e.mse_mwf)),
                    ));
                    rows += 1;
                }
            }
            Err(err) => {
                let status = err.to_string().replace([',', '\n'], ";");
                csv.push_str(&format!("{},{:?},{status},,,,,,\n", record.f, a.recover).to_lowercase());
                rows += 1;
            }
        }
    }
    report.results = json!({"sizes": sizes.len(), "rows": rows, "method": format!("{:?}", a.recover).to_lowercase()});
    emit(a.out.as_deref(), csv.as_bytes())
}

fn parse_factor_size(name: &str) -> usize {
    name.rsplit_once("-f").and_then(|(_, f)| f.parse().ok()).unwrap_or(0)
}

fn recover(a: RecoverArgs, report: &mut RunReport) -> Result<()> {
    let (factor, product) = match (&a.product, &a.factor) {
        (Some(path), _) => {
            let (p, input) = load_product(path)?;
            report.inputs.push(input);
            (spectral_factor(&p, a.size.expect("clap requires --size"))?, Some(p))
        }
        (None, Some(path)) => {
            let (b, input) = load_bank(&path.display().to_string())?;
            report.inputs.push(input);
            let s = SpectralFactor {
                f: parse_factor_size(b.name()),
                taps: b.lowpass().clone(),
                residual: f64::NAN,
            };
            (s, None::<ProductFilter>)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    report.tol("rank_tol", RANK_TOL);
    let (banks, angle) = recoveries(&factor, a.method)?;
    let chosen = match (a.method, a.variant) {
        (Method::Approx, _) => banks[0].clone(),
        (Method::Exact, Variant::Rotated) => banks[0].clone(),
        (Method::Exact, Variant::Averaged) => banks[1].clone(),
    };
    let residual = match &product {
        Some(p) => msf_bauer::residual(p, chosen.bank.lowpass())?,
        None => f64::NAN,
    };
    report.results = json!({
        "method": chosen.method.label(),
        "f": factor.f,
        "bank": chosen.bank.name(),
        "factor_residual": finite(factor.residual),
        "bank_residual": finite(residual),
        "theta": angle.map(|x| x.0),
        "even": angle.map(|x| x.1),
        "odd": angle.map(|x| x.2),
        "orthogonality_defect": chosen.bank.orthogonality_defect(),
    });
    if let Some(r) = &a.reference {
        let (reference, d) = load_bank(r)?;
        report.inputs.push(d);
        report.results["errors"] = error_json(&error_report(&chosen.bank, &reference)?);
    }
    compare_bank_flag(&chosen.bank, &a.compare, report)?;
    emit(a.out.as_deref(), bank_text(&chosen.bank).as_bytes())
}

fn analyze(a: AnalyzeArgs, report: &mut RunReport) -> Result<()> {
    let (b, input) = load_bank(&a.bank)?;
    report.inputs.push(input);
    let mut metrics = a.metrics.clone();
    metrics.sort();
    metrics.dedup();
    let mut out = json!({"name": b.name(), "r": b.r(), "orthogonality_defect": b.orthogonality_defect()});
    for m in metrics {
        match m {
            Metric::Cg => {
                report.tol("rho", a.rho);
                let cg = coding_gain(&b, a.rho)?;
                out["coding_gain"] = serde_json::to_value(&cg)?;
            }
            Metric::Sobolev => {
                out["sobolev"] = serde_json::to_value(sobolev(&b)?)?;
            }
            Metric::Gmp => {
                report.tol("gmp_tol", a.gmp_tol);
                out["gmp_111"] = json!(gmp_order_111_tol(&b, &default_prefilter(b.r()), a.gmp_tol)?);
            }
            Metric::Order => {
                report.tol("order_tol", a.order_tol);
                report.tol("p_max", a.p_max as f64);
                out["approx_order"] = json!(approximation_order_tol(&b, a.p_max, a.order_tol)?);
            }
            Metric::Balance => {
                report.tol("order_tol", a.order_tol);
                report.tol("q_max", a.q_max as f64);
                out["balance_order"] = json!(balance_order_tol(&b, a.q_max, a.order_tol)?);
            }
            Metric::Symmetry => {
                out["symmetry"] = serde_json::to_value(detect_symmetry(b.lowpass()))?;
                out["symmetric_taps"] = json!(symmetry_class(&b));
            }
            Metric::Freq => {
                let fr = frequency_response(&b, a.grid)?;
                let flat = |m: &nalgebra::DMatrix<f64>| -> Vec<f64> { m.transpose().iter().copied().collect() };
                out["frequency_response"] = json!({
                    "omega": fr.omega,
                    "lowpass": fr.lowpass.iter().map(flat).collect::<Vec<_>>(),
                    "highpass": fr.highpass.as_ref().map(|h| h.iter().map(flat).collect::<Vec<_>>()),
                });
                if let Some(path) = &a.freq_out {
                    let r = b.r();
                    let mut header = vec!["omega".to_string()];
                    for tag in ["h", "g"] {
                        for i in 0..r {
                            for j in 0..r {
                                header.push(format!("{tag}{i}{j}"));
                            }
                        }
                    }
                    let mut csv = header.join(",") + "\n";
                    for (k, w) in fr.omega.iter().enumerate() {
                        let mut cells = vec![num(*w)];
                        cells.extend(flat(&fr.lowpass[k]).into_iter().map(num));
                        match &fr.highpass {
                            Some(h) => cells.extend(flat(&h[k]).into_iter().map(num)),
                            None => cells.extend(std::iter::repeat_n(String::new(), r * r)),
                        }
                        csv.push_str(&(cells.join(",") + "\n"));
                    }
                    emit(Some(path), csv.as_bytes())?;
                }
            }
        }
    }
    report.results = out;
    Ok(())
}

fn prefilter_for(common: &TransformCommon, b: &FilterBank) -> Result<(PrefilterPair, &'static str)> {
    let kind = if common.balanced {
        PrefilterKind::Haar
    } else {
        common.prefilter.unwrap_or(if b.r() == 2 {
            PrefilterKind::Haar
        } else {
            PrefilterKind::Identity
        })
    };
    match kind {
        PrefilterKind::Haar if b.r() != 2 => Err(CliError::Usage(format!(
            "the Haar prefilter needs r = 2, bank `{}` has r = {}",
            b.name(),
            b.r()
        ))),
        PrefilterKind::Haar => Ok((PrefilterPair::haar(), "haar")),
        PrefilterKind::Identity => Ok((PrefilterPair::identity(b.r()), "identity")),
    }
}

enum Input {
    Signal(Vec<f64>),
    Image(GrayImage, PgmFormat),
}

fn load_input(path: &Path) -> Result<(Input, InputDigest)> {
    let bytes = read_file(path)?;
    let d = InputDigest {
        source: path.display().to_string(),
        sha256: digest(&bytes),
    };
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let input = match ext.as_str() {
        "csv" => Input::Signal(read_csv(bytes.as_slice())?),
        "pgm" => {
            let format = if bytes.starts_with(b"P2") {
                PgmFormat::Ascii
            } else {
                PgmFormat::Binary
            };
            Input::Image(read_pgm(bytes.as_slice())?, format)
        }
        _ => {
            return Err(CliError::Usage(format!(
                "{}: input must have a .csv or .pgm extension",
                path.display()
            )))
        }
    };
    Ok((input, d))
}

fn psnr_or_inf(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    match psnr(a, b) {
        Err(MwtError::InfinitePsnr) => Ok(f64::INFINITY),
        other => Ok(other?),
    }
}

fn psnr_json(v: f64) -> serde_json::Value {
    if v.is_infinite() {
        json!("inf")
    } else {
        json!(v)
    }
}

fn transform(a: TransformArgs, report: &mut RunReport) -> Result<()> {
    let c = &a.common;
    let (b, bank_digest) = load_bank(&c.bank)?;
    let (input, input_digest) = load_input(&c.input)?;
    report.inputs.extend([input_digest, bank_digest]);
    report.tol("ortho_warn", ORTHO_WARN);
    let (q, qlabel) = prefilter_for(c, &b)?;
    match input {
        Input::Signal(x) => {
            let mut csv = String::from("levels,mae\n");
            let mut errors = Vec::new();
            for j in 1..=c.levels {
                let e = roundtrip_mae_1d(&x, &b, &q, j)?;
                csv.push_str(&format!("{j},{}\n", num(e)));
                errors.push(e);
            }
            if let Some(path) = &a.coefficients {
                if c.levels == 0 {
                    return Err(CliError::Usage("--coefficients needs at least one level".into()));
                }
                let t = analyze_signal(&x, &b, &q, c.levels)?;
                emit(Some(path), t.dump().as_bytes())?;
            }
            report.results = json!({"kind": "signal", "bank": b.name(), "prefilter": qlabel,
                "levels": c.levels, "length": x.len(), "mae": errors});
            emit(c.out.as_deref(), csv.as_bytes())
        }
        Input::Image(img, format) => {
            let tree = analyze2d(&img, &b, &q, c.levels)?;
            let rec = synthesize2d(&tree, &b, &q)?;
            let p = psnr_or_inf(&img, &rec)?;
            report.results = json!({"kind": "image", "bank": b.name(), "prefilter": qlabel, "levels": c.levels,
                "width": img.width, "height": img.height, "psnr_db": psnr_json(p),
                "mae": mae(&img.samples, &rec.samples)?});
            emit(c.out.as_deref(), &pgm_bytes(&rec, format)?)
        }
    }
}

fn denoise(a: DenoiseArgs, report: &mut RunReport) -> Result<()> {
    let c = &a.common;
    let (b, bank_digest) = load_bank(&c.bank)?;
    let (input, input_digest) = load_input(&c.input)?;
    report.inputs.extend([input_digest, bank_digest]);
    let Input::Image(clean, _) = input else {
        return Err(CliError::Usage("denoise expects a .pgm image".into()));
    };
    let (q, qlabel) = prefilter_for(c, &b)?;
    report.seed = Some(a.seed);
    report.tol("noise_sigma", a.sigma);
    let noisy = add_noise(&clean, a.sigma, a.seed)?;
    let tree = analyze2d(&noisy, &b, &q, c.levels)?;
    let sigma_used = match a.threshold_sigma {
        Some(s) => s,
        None => estimate_sigma2d(&tree),
    };
    report.tol("threshold_sigma", sigma_used);
    let denoised = synthesize2d(&hard_threshold2d(&tree, sigma_used)?, &b, &q)?;
    let noisy_psnr = psnr_or_inf(&clean, &noisy)?;
    let denoised_psnr = psnr_or_inf(&clean, &denoised)?;
    report.results = json!({
        "bank": b.name(), "prefilter": qlabel, "levels": c.levels,
        "noise_sigma": a.sigma, "threshold_sigma": sigma_used,
        "threshold_sigma_estimated": a.threshold_sigma.is_none(),
        "noisy_psnr_db": psnr_json(noisy_psnr),
        "denoised_psnr_db": psnr_json(denoised_psnr),
        "improvement_db": finite(denoised_psnr - noisy_psnr),
    });
    let format = pgm_format(a.format);
    if let Some(path) = &a.noisy_out {
        emit(Some(path), &pgm_bytes(&noisy, format)?)?;
    }
    emit(c.out.as_deref(), &pgm_bytes(&denoised, format)?)
}
