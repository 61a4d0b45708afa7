use tamesym::catalog::FamilyId;
use tamesym::classifier::{replay_cells, CellReport};
use tamesym::Field;

fn run(f: &Field, bound: u32) -> Vec<CellReport> {
    let cells = replay_cells(f, bound).unwrap();
    for c in &cells {
        println!(
            "{f} {} {}: {} pairs, {} distinguished, {} open, {} unexpected",
            c.rep_type,
            c.n_simples,
            c.pairs,
            c.distinguished,
            c.open.len(),
            c.unexpected.len()
        );
    }
    cells
}

#[test]
fn no_unexpected_pairs_away_from_char_two() {
    for f in [Field::rationals(), Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        for c in run(&f, 4) {
            let bad: Vec<_> = c.unexpected.iter().map(|r| format!("{} vs {}", r.left, r.right)).collect();
            assert!(bad.is_empty(), "{f}: {bad:?}");
        }
    }
}

// In char 2 the invariants agree on SD(2B)_1^{k,t}(0) and (1) when k = 2 or
// t = 2, although the separation statement covers (2, odd t) and (odd k, 2).
// Everything else that is not distinguished must be a recorded open case.
#[test]
fn char_two_unexpected_pairs_are_the_k_or_t_two_scalar_pairs() {
    for f in [Field::prime(2).unwrap(), Field::extension(2, 2, None).unwrap()] {
        let cells = run(&f, 4);
        let mut seen = Vec::new();
        for c in &cells {
            for r in &c.unexpected {
                seen.push(format!("{} vs {}", r.left, r.right));
            }
        }
        let expected: Vec<String> = [(2, 3), (3, 2)]
            .iter()
            .map(|&(k, t)| format!("{} vs {}", FamilyId::SD2B1 { k, t, c: 0 }.label(), FamilyId::SD2B1 { k, t, c: 1 }.label()))
            .collect();
        assert_eq!(seen, expected, "{f}");
        let d1 = cells.iter().find(|c| c.rep_type.to_string() == "dihedral" && c.n_simples == 1).unwrap();
        assert!(d1.open.iter().all(|r| r.left.starts_with("D(1A)_2")));
    }
}
