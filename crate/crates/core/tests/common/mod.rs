//! Fixtures and the seeded random germ corpus shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use merozeta::exactalg::{int, rat, BiPoly, Rat};
use merozeta::resgraph::{parse_graph, ResolutionGraph};
use merozeta::resolve::{parse_germ, resolve_meromorphic, GermPair, ResolveError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn graph(name: &str) -> ResolutionGraph {
    parse_graph(&fixture(name)).unwrap()
}

pub fn germ(name: &str) -> GermPair {
    parse_germ(&fixture(name)).unwrap()
}

pub fn engine(name: &str) -> ResolutionGraph {
    resolve_meromorphic(&germ(name)).unwrap()
}

/// `(y - a x)^q - c x^p` with `p > q`: tangent to `y = a x`.
pub fn branch(a: &Rat, c: &Rat, p: u32, q: u32) -> BiPoly {
    let line = BiPoly::from_terms(vec![(int(1), 0, 1), (-a.clone(), 1, 0)]);
    &line.pow(q) - &BiPoly::from_terms(vec![(c.clone(), p, 0)])
}

pub struct Sample {
    pub germ: GermPair,
    pub graph: ResolutionGraph,
}

pub struct Corpus {
    pub accepted: Vec<Sample>,
    pub non_rational: usize,
    pub attempts: usize,
}

fn random_branch(rng: &mut ChaCha8Rng, a: i64) -> BiPoly {
    let coefficients = [
        rat(1, 1),
        rat(-1, 1),
        rat(2, 1),
        rat(-2, 1),
        rat(1, 2),
        rat(3, 1),
        rat(-1, 3),
    ];
    let q = rng.gen_range(1..=6);
    let p = rng.gen_range(q + 1..=7);
    let c = coefficients.choose(rng).unwrap().clone();
    let b = branch(&int(a), &c, p, q);
    if rng.gen_bool(0.15) {
        b.pow(2)
    } else {
        b
    }
}

/// Germs `P/Q` with 1-3 branches in `P` and 0-2 in `Q` (none: holomorphic),
/// every branch on its own tangent line, until `target` resolve cleanly.
pub fn random_corpus(seed: u64, target: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Corpus {
        accepted: Vec::new(),
        non_rational: 0,
        attempts: 0,
    };
    while corpus.accepted.len() < target {
        corpus.attempts += 1;
        assert!(corpus.attempts < 20 * target, "corpus generation stalled");
        let mut slopes: Vec<i64> = (-3..=3).collect();
        slopes.shuffle(&mut rng);
        let np = rng.gen_range(1..=3);
        let nq = rng.gen_range(0..=2);
        let mut p = BiPoly::one();
        let mut q = BiPoly::one();
        for (k, &a) in slopes.iter().take(np + nq).enumerate() {
            let b = random_branch(&mut rng, a);
            if k < np {
                p = &p * &b;
            } else {
                q = &q * &b;
            }
        }
        let germ = GermPair::new(p, q).expect("distinct tangents give coprime P, Q");
        match resolve_meromorphic(&germ) {
            Ok(graph) => corpus.accepted.push(Sample { germ, graph }),
            Err(ResolveError::NonRationalCenter(_)) => corpus.non_rational += 1,
            Err(e) => panic!(
                "unexpected engine error {e} on P = {}, Q = {}",
                germ.p(),
                germ.q()
            ),
        }
    }
    corpus
}
