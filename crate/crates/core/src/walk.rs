//! Seeded random walks over cut-slide moves, used to build test corpora.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::PolygonDomain;
use crate::error::Result;
use crate::moves::{apply_move_detailed, enumerate_moves, CsMove, CsPath};

/// Apply `steps` uniformly chosen applicable moves, never taking the exact
/// inverse of the previous move. Randomness comes from ChaCha8 keyed by the
/// seed, so identical seeds give identical walks on every platform.
pub fn random_walk(
    base: &PolygonDomain,
    steps: usize,
    seed: u64,
) -> Result<(PolygonDomain, CsPath)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = base.clone();
    let mut moves = Vec::with_capacity(steps);
    let mut forbidden: Option<CsMove> = None;
    for _ in 0..steps {
        let candidates: Vec<CsMove> = enumerate_moves(&current)
            .into_iter()
            .filter(|mv| Some(*mv) != forbidden)
            .collect();
        let mv = candidates[rng.gen_range(0..candidates.len())];
        let outcome = apply_move_detailed(&current, mv)?;
        forbidden = Some(CsMove {
            index: outcome.inserted_run.0,
            attach: mv.attach.opposite(),
        });
        current = outcome.domain;
        moves.push(mv);
    }
    Ok((
        current.clone(),
        CsPath {
            base: base.clone(),
            moves,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::GenusContext;

    #[test]
    fn zero_steps_is_identity() {
        let p = PolygonDomain::standard(GenusContext::new(1).unwrap());
        let (q, path) = random_walk(&p, 0, 7).unwrap();
        assert_eq!(q, p);
        assert!(path.is_empty());
    }

    #[test]
    fn walks_are_reproducible() {
        let p = PolygonDomain::standard(GenusContext::new(2).unwrap());
        let (q1, path1) = random_walk(&p, 25, 42).unwrap();
        let (q2, path2) = random_walk(&p, 25, 42).unwrap();
        assert_eq!(q1, q2);
        assert_eq!(path1, path2);
        let (q3, _) = random_walk(&p, 25, 43).unwrap();
        assert_ne!(q1, q3);
    }

    #[test]
    fn walk_endpoint_matches_path_replay() {
        let p = PolygonDomain::standard(GenusContext::new(2).unwrap());
        let (q, path) = random_walk(&p, 30, 5).unwrap();
        assert_eq!(path.replay().unwrap(), q);
        assert!(q.validate().passed());
    }

    #[test]
    fn walks_never_backtrack() {
        let p = PolygonDomain::standard(GenusContext::new(1).unwrap());
        for seed in 0..20 {
            let (_, path) = random_walk(&p, 40, seed).unwrap();
            let domains = path.replay_domains().unwrap();
            for k in 1..path.moves.len() {
                assert_ne!(
                    domains[k + 1],
                    domains[k - 1],
                    "seed {seed} backtracked at step {k}"
                );
            }
        }
    }

    #[test]
    fn walk_lengths_stay_tractable() {
        for g in [1usize, 2, 3] {
            let p = PolygonDomain::standard(GenusContext::new(g).unwrap());
            let mut worst = 0usize;
            for seed in 0..10 {
                let (q, _) = random_walk(&p, 50, seed).unwrap();
                worst = worst.max(q.total_length());
            }
            println!("genus {g}: worst |P| after 50 moves over 10 seeds = {worst}");
            assert!(worst < 2_000_000, "genus {g} blew up: {worst}");
        }
    }
}
