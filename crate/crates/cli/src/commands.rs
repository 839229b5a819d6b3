use std::fs;
use std::path::{Path, PathBuf};

use basicity::decompose::{decompose_exact, is_basic, norm_report, ExactOutcome, LsqOptions};
use basicity::embed::{
    discretize, find_improper_intersection, generate_rn_embedding, svg_for_complex, tag_graph,
    validate_projection_constraints, SvgOptions,
};
use basicity::game::{enumerate_circuits, parse_board, solve, Board, Winner};
use basicity::graphs::{build_rn, defect, embeds_in_book, forbidden_check, least_rn, Multigraph};
use basicity::lightning::{e_iterate, longest_lightning, max_lightning_length, LightningLength};
use basicity::witness::{
    basic_certificate, verify_graph, verify_points, GraphCertificate, PointsCertificate,
};
use basicity::{decompose_lsq, parse_point_set, parse_valuation, PointSet, Valuation};

use crate::report::{yes_no, Format, Report};

pub struct Ctx {
    pub format: Format,
    pub verify: Option<PathBuf>,
}

pub type Outcome = Result<(u8, String), String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_points(path: &Path) -> Result<PointSet, String> {
    parse_point_set(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_values(path: &Path, n: usize) -> Result<Valuation, String> {
    parse_valuation(&read(path)?, n).map_err(|e| format!("{}: {e}", path.display()))
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify_points_file(ctx: &Ctx, k: &PointSet, f: Option<&Valuation>, cert: &Path) -> Outcome {
    let cert = PointsCertificate::parse(&read(cert)?, k.dim())
        .map_err(|e| format!("{}: {e}", cert.display()))?;
    let mut r = Report::default();
    let code = match verify_points(k, f, &cert) {
        Ok(()) => {
            r.field("verified", "Verified", "yes");
            r.field(
                "verdict",
                "Certifies",
                if cert.is_positive() {
                    "positive"
                } else {
                    "negative"
                },
            );
            0
        }
        Err(why) => {
            r.field("verified", "Verified", "no");
            r.field("reason", "Reason", why);
            1
        }
    };
    Ok((code, r.render(ctx.format)))
}

fn points_certificate(k: &PointSet) -> (bool, PointsCertificate) {
    let v = is_basic(k);
    let cert = match &v.witness {
        Some(w) => PointsCertificate::from_witness(w),
        None => basic_certificate(k).expect("basic sets have a certificate"),
    };
    (v.basic, cert)
}

fn describe_negative(r: &mut Report, cert: &PointsCertificate, name: impl Fn(usize) -> String) {
    match cert {
        PointsCertificate::ClosedLightning { indices, .. } => {
            r.field(
                "closed-lightning",
                "Closed lightning",
                join(indices.iter().map(|&i| name(i))),
            );
        }
        PointsCertificate::Dependency { weights, .. } => {
            r.field(
                "dependency",
                "Dependent combination",
                join(weights.iter().map(|(&i, w)| format!("{w}*{}", name(i)))),
            );
        }
        _ => {}
    }
}

pub fn points_analyze(ctx: &Ctx, path: &Path) -> Outcome {
    let k = read_points(path)?;
    if let Some(v) = &ctx.verify {
        return verify_points_file(ctx, &k, None, v);
    }
    let mut r = Report::default();
    r.field("dimension", "Dimension", k.dim());
    r.field("size", "Points", k.len());
    if matches!(k.dim(), 2 | 3) {
        let e = e_iterate(&k).map_err(|e| e.to_string())?;
        r.field("e-sizes", "E-iteration sizes", join(&e.sizes));
        match (e.index, &e.core) {
            (Some(n), _) => r.field("index", "Lightning index", n),
            (None, Some(core)) => r.field("core", "Stable core size", core.len()),
            (None, None) => {}
        }
    }
    if k.dim() == 2 {
        match max_lightning_length(&k).map_err(|e| e.to_string())? {
            LightningLength::Finite(n) => {
                r.field("max-lightning", "Longest lightning", n);
                if let Some(l) = longest_lightning(&k).map_err(|e| e.to_string())? {
                    r.field(
                        "longest",
                        "A longest lightning",
                        join(l.indices.iter().map(|&i| k.get(i).to_string())),
                    );
                }
            }
            LightningLength::Infinite => r.field("max-lightning", "Longest lightning", "infinite"),
        }
    }
    let (basic, cert) = points_certificate(&k);
    r.field("basic", "Basic", yes_no(basic));
    describe_negative(&mut r, &cert, |i| k.get(i).to_string());
    r.block("Certificate", cert.to_text());
    Ok((if basic { 0 } else { 1 }, r.render(ctx.format)))
}

fn parse_lsq(args: &[String]) -> Result<LsqOptions, String> {
    let mut opts = LsqOptions::default();
    if let Some(i) = args.first() {
        opts.max_iters = i
            .parse()
            .map_err(|_| format!("bad iteration count {i:?}"))?;
    }
    if let Some(t) = args.get(1) {
        opts.tol = t.parse().map_err(|_| format!("bad tolerance {t:?}"))?;
    }
    Ok(opts)
}

pub fn points_decompose(
    ctx: &Ctx,
    points: &Path,
    values: &Path,
    lsq: Option<&[String]>,
) -> Outcome {
    let k = read_points(points)?;
    let f = read_values(values, k.len())?;
    if let Some(v) = &ctx.verify {
        return verify_points_file(ctx, &k, Some(&f), v);
    }
    let mut r = Report::default();
    if let Some(args) = lsq {
        let opts = parse_lsq(args)?;
        let rep = decompose_lsq(&k, &f, opts).map_err(|e| e.to_string())?;
        let res = rep.final_residual();
        r.field("sweeps", "Sweeps", rep.residuals.len());
        r.field("residual", "Final sup residual", res);
        let shown: Vec<String> = if rep.residuals.len() <= 8 {
            rep.residuals.iter().map(f64::to_string).collect()
        } else {
            let n = rep.residuals.len();
            let mut v: Vec<String> = rep.residuals[..4].iter().map(f64::to_string).collect();
            v.push("...".into());
            v.extend(rep.residuals[n - 3..].iter().map(f64::to_string));
            v
        };
        r.field("trajectory", "Residual trajectory", shown.join(" "));
        let mut body = String::new();
        for (axis, table) in rep.decomposition.per_axis.iter().enumerate() {
            for (c, v) in table {
                body += &format!("axis {axis}: {c} -> {v}\n");
            }
        }
        r.block("Approximation", body);
        return Ok((if res <= 1e-9 { 0 } else { 1 }, r.render(ctx.format)));
    }
    match decompose_exact(&k, &f).map_err(|e| e.to_string())? {
        ExactOutcome::Decomposed(d) => {
            let (fs, gs) = norm_report(&d, &f);
            r.field("feasible", "Decomposable", "yes");
            r.field("norm-f", "sup |f|", fs);
            r.field("norm-sum", "sum of sup |g_j|", gs);
            r.block("Certificate", PointsCertificate::Decomposition(d).to_text());
            Ok((0, r.render(ctx.format)))
        }
        ExactOutcome::Infeasible(c) => {
            let cert = PointsCertificate::from_infeasibility(&c);
            r.field("feasible", "Decomposable", "no");
            describe_negative(&mut r, &cert, |i| k.get(i).to_string());
            r.block("Certificate", cert.to_text());
            Ok((1, r.render(ctx.format)))
        }
    }
}

fn read_board(path: &Path) -> Result<Board, String> {
    parse_board(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn game_solve(
    ctx: &Ctx,
    board: Option<&Path>,
    values: Option<&Path>,
    enumerate: Option<usize>,
) -> Outcome {
    if let Some(n) = enumerate {
        if board.is_some() {
            return Err("--enumerate takes no board file".into());
        }
        let c = enumerate_circuits(n).map_err(|e| e.to_string())?;
        let mut r = Report::default();
        r.field("side", "Cube side", c.n);
        r.field("circuits", "Minimal losing sets", c.total);
        let classes: usize = c.by_size.iter().map(|(_, _, reps)| reps.len()).sum();
        r.field("classes", "Up to symmetry", classes);
        let mut body = String::new();
        for (size, count, reps) in &c.by_size {
            body += &format!("size {size}: {count} sets, {} classes\n", reps.len());
            for rep in reps {
                let cells = rep.iter().map(|c| format!("({},{},{})", c[0], c[1], c[2]));
                body += &format!("class {size}: {}\n", join(cells));
            }
        }
        r.block("Classes", body);
        return Ok((0, r.render(ctx.format)));
    }
    let board = read_board(board.ok_or("a board file is required")?)?;
    let k = board.points();
    let f = values.map(|v| read_values(v, k.len())).transpose()?;
    if let Some(v) = &ctx.verify {
        return verify_points_file(ctx, &k, f.as_ref(), v);
    }
    let mut r = Report::default();
    r.field("side", "Board side", board.n);
    r.field("dimension", "Dimension", board.dim);
    r.field("marked", "Marked cells", board.marked.len());
    let outcome = solve(&board);
    r.field("winner", "Winner", outcome.winner);
    let name = |i: usize| board.cell_name(i);
    match f {
        None => {
            let (_, cert) = points_certificate(&k);
            describe_negative(&mut r, &cert, name);
            r.block("Certificate", cert.to_text());
            Ok((
                if outcome.winner == Winner::VI { 0 } else { 1 },
                r.render(ctx.format),
            ))
        }
        Some(f) => match decompose_exact(&k, &f).map_err(|e| e.to_string())? {
            ExactOutcome::Decomposed(d) => {
                r.field("assignment", "This assignment", "has weights");
                r.block("Certificate", PointsCertificate::Decomposition(d).to_text());
                Ok((0, r.render(ctx.format)))
            }
            ExactOutcome::Infeasible(c) => {
                let cert = PointsCertificate::from_infeasibility(&c);
                r.field("assignment", "This assignment", "has no weights");
                describe_negative(&mut r, &cert, name);
                r.block("Certificate", cert.to_text());
                Ok((1, r.render(ctx.format)))
            }
        },
    }
}

pub fn graph_check(ctx: &Ctx, path: &Path, book: Option<usize>) -> Outcome {
    let g = Multigraph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(v) = &ctx.verify {
        let cert =
            GraphCertificate::parse(&read(v)?).map_err(|e| format!("{}: {e}", v.display()))?;
        let mut r = Report::default();
        let code = match verify_graph(&g, &cert) {
            Ok(()) => {
                r.field("verified", "Verified", "yes");
                0
            }
            Err(why) => {
                r.field("verified", "Verified", "no");
                r.field("reason", "Reason", why);
                1
            }
        };
        return Ok((code, r.render(ctx.format)));
    }
    let rep = forbidden_check(&g);
    let mut r = Report::default();
    r.field("vertices", "Vertices", g.vertex_count());
    r.field("edges", "Edges", g.edge_count());
    r.field("forest", "Forest", yes_no(g.is_forest()));
    r.field("has-cycle", "Contains a circle", yes_no(rep.has_cycle()));
    r.field("has-t5", "Contains a pentode", yes_no(rep.has_t5()));
    r.field("has-c", "Contains a branched cross", yes_no(rep.has_c()));
    let ok = !rep.any();
    r.field(
        "embeddable",
        "Basically embeddable in the plane",
        yes_no(ok),
    );
    r.field("defect", "Defect", defect(&g));
    if let Some(n) = book {
        r.field("book-pages", "Book pages", n);
        r.field(
            "book",
            "Basically embeddable in the book",
            yes_no(embeds_in_book(&g, n)),
        );
    }
    let cert = if ok {
        let m = g.non_leaf_count();
        r.field("r-m", "Non-leaf vertices m", m);
        match least_rn(&g, m.max(1)) {
            Some((n, map)) => {
                r.field("least-n", "Least n found with K in R_n", n);
                GraphCertificate::Embedding { n, map }
            }
            None => return Err("no R_n witness found for an embeddable graph".into()),
        }
    } else if let Some(c) = rep.cycle {
        GraphCertificate::Cycle(c)
    } else if let Some(p) = rep.pentode {
        GraphCertificate::Pentode(p)
    } else {
        GraphCertificate::Cross(rep.cross.expect("some flag is set"))
    };
    r.block("Certificate", cert.to_text());
    Ok((if ok { 0 } else { 1 }, r.render(ctx.format)))
}

pub fn embed_rn(
    ctx: &Ctx,
    n: usize,
    k: Option<usize>,
    svg: Option<&Path>,
    points: Option<&Path>,
) -> Outcome {
    if ctx.verify.is_some() {
        return Err("embed rn prints no certificate to verify".into());
    }
    if points.is_some() && k.is_none() {
        return Err("--points needs --k".into());
    }
    let sc = generate_rn_embedding(n);
    let v = validate_projection_constraints(&sc);
    let crossing = find_improper_intersection(&sc);
    let mut r = Report::default();
    r.field("level", "Level n", n);
    r.field("segments", "Segments", sc.segments.len());
    r.field("vertices", "Vertices", sc.vertices().len());
    r.field("placements", "Frame placements", sc.placements.len());
    r.field(
        "validation",
        "Projection constraints",
        if v.passed() { "pass" } else { "fail" },
    );
    if let Some(bad) = &v.violation {
        r.field("violation", "First violation", bad);
    }
    r.field(
        "intersections",
        "Improper intersections",
        crossing.map_or("none".to_string(), |(i, j)| format!("segments {i} and {j}")),
    );
    r.field(
        "graph-is-rn",
        "Segment tags span R_n",
        yes_no(tag_graph(&sc) == build_rn(n)),
    );
    let mut ok = v.passed() && crossing.is_none();
    let mut sample = None;
    if let Some(k) = k {
        let pts = discretize(&sc, k).map_err(|e| e.to_string())?;
        let e = e_iterate(&pts).map_err(|e| e.to_string())?;
        r.field("samples", "Samples per segment", k);
        r.field("sample-size", "Sampled points", pts.len());
        match e.index {
            Some(i) => r.field("index", "Lightning index", i),
            None => {
                ok = false;
                r.field(
                    "index",
                    "Lightning index",
                    "none (closed lightning present)",
                );
            }
        }
        if let Some(p) = points {
            fs::write(p, pts.to_text()).map_err(|e| format!("{}: {e}", p.display()))?;
        }
        sample = Some(pts);
    }
    if let Some(p) = svg {
        let doc = svg_for_complex(&sc, sample.as_ref(), SvgOptions::default());
        fs::write(p, doc).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    let mut body = String::new();
    for s in &sc.segments {
        body += &format!("segment {} {} {}-{}\n", s.a, s.b, s.tag.0, s.tag.1);
    }
    r.block("Segments", body);
    Ok((if ok { 0 } else { 1 }, r.render(ctx.format)))
}
