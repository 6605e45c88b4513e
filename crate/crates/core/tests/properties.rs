use proptest::prelude::*;

use possfca::calculus::quantize_model;
use possfca::concept::{down, is_concept, up, ConceptFlavor};
use possfca::fuzzy::{derive_cut, measures, CrispSet, Degree, Derivation, Element, FuzzyContext, Sort};
use possfca::logic::{deg_of, parse, translate_rho, Formula, ModalKind, RhoDirection, Signature, WeightMark};
use possfca::model::{satisfies, truth_set, Model, Valuation};
use possfca::multirel::{derived_relation, za_equal, IndexTerm, MultiContext};

fn degree(den: i64) -> impl Strategy<Value = Degree> {
    (0..=den).prop_map(move |k| Degree::frac(k, den))
}

/// A context up to 4x4 with cells on a grid `{0, 1/n, ..., 1}`, `n <= 6`.
fn context() -> impl Strategy<Value = FuzzyContext> {
    (1usize..=4, 1usize..=4, 1i64..=6).prop_flat_map(|(g, m, den)| {
        prop::collection::vec(degree(den), g * m).prop_map(move |cells| {
            let rows = cells.chunks(m).map(<[Degree]>::to_vec).collect();
            FuzzyContext::from_rows(rows).unwrap()
        })
    })
}

fn subset(sort: Sort, universe: usize, mask: u64) -> CrispSet {
    CrispSet::from_mask(sort, universe, mask & ((1 << universe) - 1))
}

/// Context, an object subset, an attribute subset and a weight.
fn setting() -> impl Strategy<Value = (FuzzyContext, CrispSet, CrispSet, Degree)> {
    (context(), any::<u64>(), any::<u64>(), degree(12)).prop_map(|(ctx, a, b, c)| {
        let a = subset(Sort::Object, ctx.n_objects(), a);
        let b = subset(Sort::Property, ctx.n_attributes(), b);
        (ctx, a, b, c)
    })
}

fn atom(sort: Sort, k: usize) -> Formula {
    let name = match sort {
        Sort::Object => format!("p{k}"),
        Sort::Property => format!("q{k}"),
    };
    Formula::atom(name, sort)
}

fn mark() -> impl Strategy<Value = WeightMark> {
    (degree(4), any::<bool>()).prop_map(|(degree, strict)| WeightMark { degree, strict })
}

fn formula(sort: Sort, depth: u32, kinds: &'static [ModalKind]) -> BoxedStrategy<Formula> {
    let leaf = (1usize..=2).prop_map(move |k| atom(sort, k));
    if depth == 0 {
        return leaf.boxed();
    }
    let sub = formula(sort, depth - 1, kinds);
    let other = formula(sort.other(), depth - 1, kinds);
    prop_oneof![
        1 => leaf,
        1 => sub.clone().prop_map(Formula::not),
        2 => (sub.clone(), sub).prop_map(|(a, b)| Formula::and(a, b).unwrap()),
        2 => (prop::sample::select(kinds), mark(), other).prop_map(|(k, m, body)| Formula::modal(k, m, None, body)),
    ]
    .boxed()
}

const BOTH: &[ModalKind] = &[ModalKind::Necessity, ModalKind::Sufficiency];
const SUFF: &[ModalKind] = &[ModalKind::Sufficiency];

fn model(ctx: FuzzyContext, seed: u64) -> Model {
    let (g, m) = (ctx.n_objects(), ctx.n_attributes());
    let val = Valuation::new()
        .with("p1", subset(Sort::Object, g, seed))
        .with("p2", subset(Sort::Object, g, seed >> 8))
        .with("q1", subset(Sort::Property, m, seed >> 16))
        .with("q2", subset(Sort::Property, m, seed >> 24));
    Model::new(ctx, val).unwrap()
}

fn index() -> impl Strategy<Value = IndexTerm> {
    let leaf = prop_oneof![Just(IndexTerm::Zero), Just(IndexTerm::prim("a")), Just(IndexTerm::prim("b"))];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(IndexTerm::complement),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| IndexTerm::inter(x, y)),
            (inner.clone(), inner).prop_map(|(x, y)| IndexTerm::union(x, y)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn operators_are_measures((ctx, a, b, _) in setting()) {
        for (set, pivots) in [(&a, Sort::Property), (&b, Sort::Object)] {
            let op = if set.sort() == Sort::Object { Derivation::Plus } else { Derivation::Minus };
            let plus = possfca::fuzzy::derive(&ctx, set, op).unwrap();
            let boxed = possfca::fuzzy::derive(&ctx, set, Derivation::Box).unwrap();
            let diamond = possfca::fuzzy::derive(&ctx, set, Derivation::Diamond).unwrap();
            for y in 0..ctx.size(pivots) {
                let pivot = Element { sort: pivots, index: y };
                let ms = measures(&ctx, pivot, set).unwrap();
                prop_assert_eq!(plus.get(y), ms.guaranteed);
                prop_assert_eq!(boxed.get(y), ms.necessity);
                prop_assert_eq!(diamond.get(y), ms.possibility);
                let rest = measures(&ctx, pivot, &set.complement()).unwrap();
                prop_assert_eq!(ms.potential, rest.guaranteed.complement());
            }
        }
    }

    #[test]
    fn cut_derivations_form_galois_connections((ctx, a, b, c) in setting()) {
        let a_plus = derive_cut(&ctx, &a, Derivation::Plus, c, false).unwrap();
        let b_minus = derive_cut(&ctx, &b, Derivation::Minus, c, false).unwrap();
        prop_assert!(a.is_subset(&derive_cut(&ctx, &a_plus, Derivation::Minus, c, false).unwrap()));
        prop_assert!(b.is_subset(&derive_cut(&ctx, &b_minus, Derivation::Plus, c, false).unwrap()));
        prop_assert_eq!(a.is_subset(&b_minus), b.is_subset(&a_plus));

        let a_dia = derive_cut(&ctx, &a, Derivation::Diamond, c.complement(), true).unwrap();
        let b_box = derive_cut(&ctx, &b, Derivation::Box, c, false).unwrap();
        prop_assert_eq!(a_dia.is_subset(&b), a.is_subset(&b_box));
        let b_dia = derive_cut(&ctx, &b, Derivation::Diamond, c.complement(), true).unwrap();
        let a_box = derive_cut(&ctx, &a, Derivation::Box, c, false).unwrap();
        prop_assert_eq!(b_dia.is_subset(&a), b.is_subset(&a_box));
    }

    #[test]
    fn complement_swaps_derivations((ctx, a, b, c) in setting()) {
        let comp = ctx.complement();
        let cut = |k: &FuzzyContext, s: &CrispSet, op| derive_cut(k, s, op, c, false).unwrap();
        prop_assert_eq!(cut(&ctx, &a, Derivation::Plus), cut(&comp, &a.complement(), Derivation::Box));
        prop_assert_eq!(cut(&ctx, &b, Derivation::Minus), cut(&comp, &b.complement(), Derivation::Box));
        prop_assert_eq!(cut(&ctx, &a, Derivation::Box), cut(&comp, &a.complement(), Derivation::Plus));
        let dia = derive_cut(&ctx, &a, Derivation::Diamond, c, true).unwrap();
        let via_box = derive_cut(&ctx, &a.complement(), Derivation::Box, c.complement(), false).unwrap();
        prop_assert_eq!(dia, via_box.complement());
    }

    #[test]
    fn closures_are_concepts((ctx, a, _, c) in setting()) {
        for flavor in ConceptFlavor::ALL {
            let intent = up(&ctx, flavor, c, &a).unwrap();
            let extent = down(&ctx, flavor, c, &intent).unwrap();
            let intent = up(&ctx, flavor, c, &extent).unwrap();
            prop_assert!(is_concept(&ctx, flavor, c, &extent, &intent).unwrap());
        }
    }

    #[test]
    fn printing_round_trips(f in formula(Sort::Object, 4, BOTH)) {
        let text = f.to_string();
        let sig = Signature::new();
        let back = parse(&text, &sig, Some(Sort::Object)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn quantization_preserves_truth(
        ctx in context(),
        seed in any::<u64>(),
        f in formula(Sort::Object, 3, BOTH),
        g in formula(Sort::Property, 3, BOTH),
    ) {
        let m = model(ctx, seed);
        for phi in [&f, &g] {
            let q = quantize_model(&m, &deg_of(phi));
            prop_assert_eq!(truth_set(&m, phi).unwrap(), truth_set(&q, phi).unwrap());
        }
    }

    #[test]
    fn rho_moves_to_the_complemented_model(ctx in context(), seed in any::<u64>(), f in formula(Sort::Property, 3, SUFF)) {
        let m = model(ctx, seed);
        let image = translate_rho(&f, RhoDirection::SuffToNec).unwrap();
        let back = translate_rho(&image, RhoDirection::NecToSuff).unwrap();
        for w in 0..m.context().n_attributes() {
            let world = Element::attribute(w);
            let holds = satisfies(&m, world, &f).unwrap();
            prop_assert_eq!(holds, satisfies(&m.complemented(), world, &image).unwrap());
            prop_assert_eq!(holds, satisfies(&m, world, &back).unwrap());
        }
    }

    #[test]
    fn za_equal_terms_denote_equal_relations(i in index(), j in index(), ctx_a in context(), seed in any::<u64>()) {
        let shape = (ctx_a.n_objects(), ctx_a.n_attributes());
        let cells_b: Vec<Degree> = (0..shape.0 * shape.1)
            .map(|k| Degree::frac(((seed >> (k % 60)) & 3) as i64, 3))
            .collect();
        let ctx_b = FuzzyContext::new(ctx_a.objects().to_vec(), ctx_a.attributes().to_vec(), cells_b).unwrap();
        let mctx = MultiContext::new([("a".to_string(), ctx_a), ("b".to_string(), ctx_b)]).unwrap();
        for (x, y) in [(&i, &j), (&i, &IndexTerm::complement(IndexTerm::complement(i.clone())))] {
            if za_equal(x, y) {
                prop_assert_eq!(derived_relation(&mctx, x).unwrap(), derived_relation(&mctx, y).unwrap());
            }
        }
        prop_assert_eq!(derived_relation(&mctx, &i).unwrap(), derived_relation(&mctx, &i.normal_form()).unwrap());
    }
}
