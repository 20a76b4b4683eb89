//! Acceptance criteria. Each prints one PASS/FAIL line with its runtime
//! and the pinned limit; any failure makes the binary exit non-zero.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bruhat_ekr::genfun::{
    binomial, multiplicity_bound, q_multinomial, rho, rho_upset_genfun, star_genfun,
};
use bruhat_ekr::levels::{enumerate_level, multiplicity_witnesses, symmetric_group, upset_level};
use bruhat_ekr::perm::pair_count;
use bruhat_ekr::search::verify::{verify, Suite, Verdict, VerifyParams};
use bruhat_ekr::search::{
    all_maximum_intersecting_families, max_intersecting_full, max_intersecting_full_search,
    max_intersecting_level, max_separated_intersecting, IntersectionGraph, SearchConfig,
};
use bruhat_ekr::systems::{k_subsets, maximal_intersecting_antichains};
use bruhat_ekr::{
    family_p, h_family, pi_minimal, GeneratorSet, PermFamily, Permutation, SetSystem,
};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation")
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

const FIGURE_ONE: [(&str, &[usize]); 24] = [
    ("1234", &[]),
    ("2134", &[1]),
    ("1324", &[2]),
    ("1243", &[3]),
    ("2314", &[1]),
    ("3124", &[2]),
    ("1342", &[2]),
    ("2143", &[1, 3]),
    ("1423", &[3]),
    ("2341", &[1]),
    ("3214", &[1, 2]),
    ("3142", &[2]),
    ("2413", &[1, 3]),
    ("1432", &[2, 3]),
    ("4123", &[3]),
    ("3241", &[1, 2]),
    ("2431", &[1, 3]),
    ("3412", &[2]),
    ("4213", &[1, 3]),
    ("4132", &[2, 3]),
    ("3421", &[1, 2]),
    ("4231", &[1, 3]),
    ("4312", &[2, 3]),
    ("4321", &[1, 2, 3]),
];

const FIGURE_ONE_EDGES: [(&str, &str); 36] = [
    ("1234", "2134"),
    ("1234", "1324"),
    ("1234", "1243"),
    ("2134", "2314"),
    ("2134", "2143"),
    ("1324", "3124"),
    ("1324", "1342"),
    ("1243", "2143"),
    ("1243", "1423"),
    ("2314", "2341"),
    ("2314", "3214"),
    ("3124", "3214"),
    ("3124", "3142"),
    ("2143", "2413"),
    ("1342", "3142"),
    ("1342", "1432"),
    ("1423", "1432"),
    ("1423", "4123"),
    ("2341", "3241"),
    ("2341", "2431"),
    ("3214", "3241"),
    ("3142", "3412"),
    ("2413", "2431"),
    ("2413", "4213"),
    ("1432", "4132"),
    ("4123", "4132"),
    ("4123", "4213"),
    ("3241", "3421"),
    ("3412", "3421"),
    ("2431", "4231"),
    ("4213", "4231"),
    ("3412", "4312"),
    ("4132", "4312"),
    ("3421", "4321"),
    ("4231", "4321"),
    ("4312", "4321"),
];

fn lattice_of_four() -> Outcome {
    let sizes: Vec<usize> = (0..=6)
        .map(|l| enumerate_level(4, l).map(|e| e.count()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(sizes == [1, 3, 5, 6, 5, 3, 1], || {
        format!("level sizes {sizes:?}")
    })?;
    let mut seen = BTreeSet::new();
    for (w, id) in FIGURE_ONE {
        let p = perm(w);
        let want = GeneratorSet::from_indices(3, id.iter().copied()).unwrap();
        ensure(p.inverse_descents() == want, || {
            format!("ID({w}) = {} not {want}", p.inverse_descents())
        })?;
        seen.insert(p);
    }
    let all: BTreeSet<Permutation> = symmetric_group(4).unwrap().into_iter().collect();
    ensure(seen == all, || "labels do not cover Sym(4)".into())?;
    let drawn: BTreeSet<(Permutation, Permutation)> = FIGURE_ONE_EDGES
        .iter()
        .map(|(a, b)| (perm(a), perm(b)))
        .collect();
    let covers: BTreeSet<(Permutation, Permutation)> = all
        .iter()
        .flat_map(|p| p.covers().into_iter().map(move |q| (*p, q)))
        .collect();
    ensure(drawn == covers, || {
        "Hasse diagram differs from the cover relation".into()
    })?;
    Ok("sizes 1,3,5,6,5,3,1; 24 labels and 36 covers match".into())
}

fn half_the_lattice() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=5 {
        let o = max_intersecting_full(n, 1, &cfg()).map_err(|e| e.to_string())?;
        let half = factorial(n) as u64 / 2;
        ensure(o.optimal && o.optimum == half, || {
            format!("n={n}: {} (optimal {})", o.optimum, o.optimal)
        })?;
        ensure(o.is_star, || format!("n={n}: witness is not a star"))?;
        let members = o.witness.permutations().unwrap().to_vec();
        ensure(
            PermFamily::new(n, members).unwrap().is_intersecting(),
            || format!("n={n}: witness not intersecting"),
        )?;
        let s = max_intersecting_full_search(n, 1, &cfg()).map_err(|e| e.to_string())?;
        ensure(s.optimal && s.optimum == half, || {
            format!("n={n}: clique search {}", s.optimum)
        })?;
        parts.push(format!("f1({n})={half}"));
    }
    Ok(parts.join(" "))
}

fn rank_three_level() -> Outcome {
    let mut parts = Vec::new();
    for (n, want) in [(4, 3), (5, 6), (6, 10), (7, 15)] {
        let o = max_intersecting_level(n, 3, 1, &cfg()).map_err(|e| e.to_string())?;
        ensure(o.optimal && o.optimum == want, || {
            format!("n={n}: {} (optimal {})", o.optimum, o.optimal)
        })?;
        ensure(o.is_star, || format!("n={n}: witness is not a star"))?;
        parts.push(format!("n={n}:{want}"));
    }
    Ok(parts.join(" "))
}

fn star_generating_function() -> Outcome {
    for n in 3..=12 {
        let c = star_genfun(n).unwrap().coeff(2);
        let want = binomial(n as u64 - 1, 2);
        ensure(c.to_biguint() == Some(want.clone()), || {
            format!("n={n}: {c} vs {want}")
        })?;
    }
    for n in 3..=7 {
        let want = binomial(n as u64 - 1, 2);
        for i in 1..n {
            let g = Permutation::generator(n, i).unwrap();
            let size = upset_level(&g, 3).unwrap().count();
            ensure(BigUint::from(size) == want, || {
                format!("n={n} g{i}: {size} vs {want}")
            })?;
        }
    }
    Ok("x^2 coefficient = C(n-1,2) for n=3..12; enumerated stars agree for n=3..7".into())
}

fn block_sizes(a: &GeneratorSet, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut prev = 0;
    for i in a.indices() {
        parts.push(i - prev);
        prev = i;
    }
    parts.push(n - prev);
    parts
}

fn multiplicities() -> Outcome {
    let a = GeneratorSet::from_indices(5, [1, 4]).unwrap();
    let two: BTreeSet<String> = multiplicity_witnesses(&a, 6, 2)
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    let three: BTreeSet<String> = multiplicity_witnesses(&a, 6, 3)
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    ensure(two == BTreeSet::from(["213546".to_string()]), || {
        format!("level 2 witnesses {two:?}")
    })?;
    let want3: BTreeSet<String> = ["231546", "215346", "213564"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(three == want3, || format!("level 3 witnesses {three:?}"))?;
    let mut checked = 0;
    for n in 2..=6 {
        let mut table: HashMap<(u32, usize), u64> = HashMap::new();
        for q in symmetric_group(n).unwrap() {
            *table
                .entry((q.inverse_descents().bits(), q.rank()))
                .or_default() += 1;
        }
        for bits in 0..1u32 << (n - 1) {
            let a = GeneratorSet::from_bits(n - 1, bits).unwrap();
            let qm = q_multinomial(&block_sizes(&a, n)).unwrap();
            for ell in 0..=pair_count(n) {
                let m = table.get(&(bits, ell)).copied().unwrap_or(0);
                checked += 1;
                if !a.is_empty() {
                    let bound = multiplicity_bound(a.len(), ell).unwrap().ceil();
                    ensure(m as f64 <= bound, || {
                        format!("n={n} A={a} l={ell}: {m} > {bound}")
                    })?;
                } else {
                    ensure(m == u64::from(ell == 0), || {
                        format!("n={n} empty set at {ell}: {m}")
                    })?;
                }
                let c = qm.coeff(ell);
                ensure(
                    BigUint::from(m) <= c.to_biguint().unwrap_or_default(),
                    || format!("n={n} A={a} l={ell}: {m} > q-multinomial {c}"),
                )?;
            }
        }
    }
    Ok(format!(
        "witness lists match; both bounds hold on {checked} (set, level) pairs"
    ))
}

fn three_sixty() -> Outcome {
    let h = h_family(6, 2, 2).unwrap().relabel_to_generators(6).unwrap();
    let other = SetSystem::from_index_lists(5, &[&[1, 3], &[1, 5], &[3, 5]]).unwrap();
    let fh = family_p(&h, 6).unwrap();
    let fo = family_p(&other, 6).unwrap();
    ensure(fh.len() == 360 && fo.len() == 360, || {
        format!("sizes {} and {}", fh.len(), fo.len())
    })?;
    let mins = |f: &PermFamily| -> BTreeSet<String> {
        f.min_family()
            .members()
            .iter()
            .map(|p| p.to_string())
            .collect()
    };
    let want_h: BTreeSet<String> = ["321456", "214356", "143256"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let want_o: BTreeSet<String> = ["214356", "213465", "124365"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(mins(&fh) == want_h, || format!("minima {:?}", mins(&fh)))?;
    ensure(mins(&fo) == want_o, || format!("minima {:?}", mins(&fo)))?;
    ensure(
        perm("321456").rank() == 3 && perm("143256").rank() == 3,
        || "minimum ranks".into(),
    )?;
    let (rh, ro) = (fh.rank_profile(), fo.rank_profile());
    ensure(rh != ro, || "rank multisets coincide".into())?;
    Ok(format!("both 360; rank profiles differ ({rh:?} vs {ro:?})"))
}

fn maximum_families() -> Outcome {
    let mut parts = Vec::new();
    for n in 4..=5 {
        let half = factorial(n) / 2;
        let antichains = maximal_intersecting_antichains(n - 1).unwrap();
        for a in &antichains {
            let size = family_p(a, n).unwrap().len();
            ensure(size == half, || format!("n={n} A={a}: |P(A)|={size}"))?;
        }
        let (families, complete) =
            all_maximum_intersecting_families(n, &cfg()).map_err(|e| e.to_string())?;
        ensure(complete, || format!("n={n}: enumeration incomplete"))?;
        let mut gens = BTreeSet::new();
        for members in &families {
            ensure(members.len() == half, || {
                format!("n={n}: family of size {}", members.len())
            })?;
            let fam = PermFamily::new(n, members.iter().copied()).unwrap();
            let g = fam.generating_system();
            ensure(family_p(&g, n).unwrap() == fam, || {
                format!("n={n}: family not regenerated by {g}")
            })?;
            gens.insert(g.to_text());
        }
        let want: BTreeSet<String> = antichains.iter().map(|a| a.to_text()).collect();
        ensure(gens == want, || {
            format!("n={n}: generating systems differ from the maximal antichains")
        })?;
        parts.push(format!(
            "n={n}: {} antichains, {} maximum families",
            antichains.len(),
            families.len()
        ));
    }
    Ok(parts.join("; "))
}

fn is_separated(bits: u32) -> bool {
    bits & (bits >> 1) == 0
}

fn separated_pairs() -> Outcome {
    let mut parts = Vec::new();
    for m in 5..=7 {
        let sets: Vec<u32> = k_subsets(m, 2)
            .into_iter()
            .filter(|&s| is_separated(s))
            .collect();
        let mut best = 0;
        for mask in 0u64..1 << sets.len() {
            let chosen: Vec<u32> = (0..sets.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sets[i])
                .collect();
            if chosen.len() > best && chosen.iter().all(|a| chosen.iter().all(|b| a & b != 0)) {
                best = chosen.len();
            }
        }
        let o = max_separated_intersecting(m, 2, &cfg()).map_err(|e| e.to_string())?;
        let closed = m - 2;
        ensure(
            best == closed && o.optimum as usize == closed && o.optimal,
            || {
                format!(
                    "m={m}: brute force {best}, search {}, closed form {closed}",
                    o.optimum
                )
            },
        )?;
        parts.push(format!("m={m}:{closed}"));
    }
    Ok(parts.join(" "))
}

const RHO_SIX: [&str; 16] = [
    "123456", "123465", "123645", "126345", "162345", "612345", "612354", "612534", "615234",
    "651234", "651243", "651423", "654123", "654132", "654312", "654321",
];

fn rho_section() -> Outcome {
    for (t, w) in RHO_SIX.iter().enumerate() {
        let r = rho(6, t).unwrap();
        ensure(r.to_string() == *w, || format!("rho({t}) = {r}, table {w}"))?;
    }
    let f44 = rho_upset_genfun(4, 4).unwrap();
    ensure(
        f44.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            == ["1", "1", "1"],
        || format!("F_4,4 = {f44}"),
    )?;
    let mut checked = 0;
    for n in 1..=6 {
        for t in 0..=pair_count(n) {
            let p = rho(n, t).unwrap();
            let f = rho_upset_genfun(n, t).unwrap();
            for r in t..=pair_count(n) {
                let size = upset_level(&p, r).unwrap().count();
                let c = f.coeff(r - t);
                ensure(c == size.into(), || {
                    format!("n={n} t={t} r={r}: coefficient {c}, enumerated {size}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "16 table entries, F_4,4 = 1+x+x^2, {checked} (n,t,r) coefficients"
    ))
}

fn property_suites() -> Outcome {
    // meet against the largest common lower bound found by scanning
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut meet_cases = 0;
    for n in 1..=6 {
        let all = symmetric_group(n).unwrap();
        let pairs: Vec<(usize, usize)> = if n <= 5 {
            (0..all.len())
                .flat_map(|i| (i..all.len()).map(move |j| (i, j)))
                .collect()
        } else {
            (0..10_000)
                .map(|_| {
                    (
                        rand::Rng::gen_range(&mut rng, 0..720),
                        rand::Rng::gen_range(&mut rng, 0..720),
                    )
                })
                .collect()
        };
        for (i, j) in pairs {
            let (p, q) = (all[i], all[j]);
            let lower: Vec<&Permutation> = all
                .iter()
                .filter(|r| r.leq(&p).unwrap() && r.leq(&q).unwrap())
                .collect();
            let top = lower.iter().max_by_key(|r| r.rank()).unwrap();
            ensure(lower.iter().all(|r| r.leq(top).unwrap()), || {
                format!("no unique meet for {p} {q}")
            })?;
            ensure(p.meet(&q).unwrap() == **top, || format!("meet({p},{q})"))?;
            meet_cases += 1;
        }
    }
    // descent identity and minimality, exhaustive
    let mut pairs = 0u64;
    for n in 1..=6 {
        let all = symmetric_group(n).unwrap();
        for i in 0..all.len() {
            for j in i..all.len() {
                let m = all[i].meet(&all[j]).unwrap();
                let both = all[i]
                    .inverse_descents()
                    .intersection(&all[j].inverse_descents());
                ensure(m.inverse_descents() == both, || {
                    format!("ID of meet {} {}", all[i], all[j])
                })?;
                pairs += 1;
            }
        }
        for q in &all {
            ensure(q.inversion_set().is_biclosed(), || {
                format!("Inv({q}) not biclosed")
            })?;
            if n >= 2 {
                let p = pi_minimal(&q.inverse_descents()).unwrap();
                ensure(
                    p.leq(q).unwrap() && p.inversion_set().is_subset(&q.inversion_set()),
                    || format!("pi(ID({q})) = {p} is not below {q}"),
                )?;
            }
        }
    }
    // biclosedness on random larger permutations
    let mut words: Vec<u8> = (1..=16).collect();
    for _ in 0..10_000 {
        words.shuffle(&mut rng);
        let n = rand::Rng::gen_range(&mut rng, 1..=16);
        let w: Vec<u8> = {
            let mut v: Vec<u8> = (1..=n as u8).collect();
            v.shuffle(&mut rng);
            v
        };
        let p = Permutation::from_word(&w).unwrap();
        ensure(p.inversion_set().is_biclosed(), || {
            format!("Inv({p}) not biclosed")
        })?;
        ensure(
            Permutation::from_inversion_set(&p.inversion_set()).unwrap() == p,
            || format!("round trip {p}"),
        )?;
    }
    // adjacency agreement during every level-graph build
    let mut builds = 0;
    let mut edge_checks = 0;
    for n in 2..=6 {
        for r in 1..=pair_count(n) {
            let g = IntersectionGraph::build(enumerate_level(n, r).unwrap().items, 1).unwrap();
            builds += 1;
            edge_checks += g.id_checks();
        }
    }
    Ok(format!(
        "meet oracle {meet_cases} pairs; ID identity {pairs} pairs; biclosed/minimality exhaustive n<=6 plus 10000 random; {builds} graph builds, {edge_checks} edge checks"
    ))
}

fn conjectures() -> Outcome {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for n in 2..=6 {
        let r = verify(
            Suite::LevelEkrConjecture,
            &VerifyParams {
                n: Some(n),
                ..Default::default()
            },
            &cfg(),
        )
        .map_err(|e| e.to_string())?;
        summary.push(format!("cnj-5.10 n={n} {}", r.verdict.as_str()));
        if r.verdict != Verdict::Consistent {
            failures.extend(r.failures().map(|c| {
                format!(
                    "cnj-5.10 n={n} {}: claimed {} computed {}",
                    c.label, c.claimed, c.computed
                )
            }));
        }
    }
    for n in 2..=5 {
        let r = verify(
            Suite::TIntersectingConjecture,
            &VerifyParams {
                n: Some(n),
                ..Default::default()
            },
            &cfg(),
        )
        .map_err(|e| e.to_string())?;
        summary.push(format!("cnj-6.2 n={n} {}", r.verdict.as_str()));
        if r.verdict != Verdict::Consistent {
            failures.extend(r.failures().map(|c| {
                format!(
                    "cnj-6.2 n={n} {}: claimed {} computed {}",
                    c.label, c.claimed, c.computed
                )
            }));
        }
    }
    if failures.is_empty() {
        Ok(summary.join("; "))
    } else {
        Err(format!(
            "{}\n      {}",
            summary.join("; "),
            failures.join("\n      ")
        ))
    }
}

/// (number, title, time limit in seconds, check)
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (
            1,
            "B(4) level sizes and inverse-descent labels",
            1,
            lattice_of_four,
        ),
        (
            2,
            "whole-lattice maximum is n!/2, n=3..5, star witness",
            10,
            half_the_lattice,
        ),
        (
            3,
            "rank-3 level maximum 3,6,10,15 for n=4..7, star",
            60,
            rank_three_level,
        ),
        (
            4,
            "star generating function against enumeration",
            60,
            star_generating_function,
        ),
        (
            5,
            "multiplicity examples and both bounds, n<=6",
            30,
            multiplicities,
        ),
        (
            6,
            "two 360-element families with different rank profiles",
            10,
            three_sixty,
        ),
        (
            7,
            "maximum families are P(A) for maximal antichains, n=4,5",
            300,
            maximum_families,
        ),
        (
            8,
            "separated 2-sets: brute force = search = m-2, m=5..7",
            10,
            separated_pairs,
        ),
        (
            9,
            "rho table for n=6 and upset generating functions, n<=6",
            60,
            rho_section,
        ),
        (10, "property suites", 300, property_suites),
        (
            11,
            "conjecture evidence: levels n<=6, t-intersecting n<=5",
            300,
            conjectures,
        ),
    ];
    let mut failed = 0;
    for (num, title, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {num:>2}: {title} [{} ms, limit {limit} s]\n      {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_millis()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
