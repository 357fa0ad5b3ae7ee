use bqg::instances::semidirect_catalogue;
use bqg::mackey::{classify_semidirect, fusion_oracle, fusion_semidirect};

#[test]
fn coset_formula_matches_characters_on_catalogue() {
    for (name, p) in semidirect_catalogue().unwrap() {
        let cls = classify_semidirect(&p, 7).unwrap();
        let n = cls.len();
        let total: usize = cls.dims().iter().map(|d| d * d).sum();
        assert_eq!(total, p.group().order(), "{name}");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let formula = fusion_semidirect(&cls, a, b, c).unwrap();
                    let oracle = fusion_oracle(&cls, a, b, c).unwrap();
                    assert_eq!(formula, oracle, "{name} ({a},{b},{c})");
                }
            }
        }
    }
}
