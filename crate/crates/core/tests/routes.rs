use hyperpfaffian::poly::{ratio, vandermonde};
use hyperpfaffian::{
    pf_closed_form, pf_definition, pf_exterior, Polynomial, SkewFunction, SkewSpec,
};

/// One fresh variable per sorted subset, numbered from `offset + 1`.
fn generic(n: u32, k: u32, offset: u32) -> SkewFunction {
    let mut next = offset;
    SkewFunction::from_fn(n, k, |_| {
        next += 1;
        Polynomial::var(next)
    })
    .unwrap()
}

#[test]
fn definition_and_exterior_agree_on_generic_functions() {
    for (n, k) in [(2, 2), (4, 2), (6, 2), (4, 4), (8, 4)] {
        let f = generic(n, k, 0);
        assert_eq!(
            pf_definition(&f).unwrap(),
            pf_exterior(&f).unwrap(),
            "n={n} k={k}"
        );
    }
}

#[test]
fn packed_and_exact_arithmetic_give_the_same_pfaffian() {
    // Variables above x16 force the exact route; shifting back must match.
    let low = pf_definition(&generic(6, 2, 0)).unwrap();
    let high = pf_definition(&generic(6, 2, 20)).unwrap();
    assert_eq!(high.rename(|v| v - 20), low);
    assert_eq!(pf_exterior(&generic(6, 2, 20)).unwrap(), high);
    // 15 matchings of [6], each a product of three distinct variables.
    assert_eq!(low.num_terms(), 15);
}

#[test]
fn closed_form_matches_for_fractional_coefficients() {
    let spec = SkewSpec::new(
        4,
        2,
        3,
        [
            (hyperpfaffian::Composition(vec![0, 3]), ratio(1, 2)),
            (hyperpfaffian::Composition(vec![1, 2]), ratio(-5, 3)),
        ],
    )
    .unwrap();
    let f = spec.to_skew_function();
    let closed = pf_closed_form(&spec).unwrap();
    assert_eq!(pf_definition(&f).unwrap(), closed);
    assert_eq!(pf_exterior(&f).unwrap(), closed);
    assert_eq!(
        closed,
        vandermonde(4).scale(&hyperpfaffian::theorem_coefficient(&spec).unwrap())
    );
    assert!(!closed.is_zero());
}
