use num_bigint::BigInt;
use proptest::prelude::*;
use qf_core::constructions::{dihedral_quandle, takasaki, trivial, u_quandle, u_union_data, union};
use qf_core::envelope::{
    abelianization, injectivity_certificate, presentation_of, verify_u_reduction, Assignment,
};
use qf_core::fingroup::make_heisenberg_model;
use qf_core::freealg::{fq_canonicalize, fq_equal, fr_op, FreeProduct, FreeRackElement, QWord};
use qf_core::ga::ga_quandle;
use qf_core::snf::{smith_normal_form, IntMatrix};
use qf_core::{FiniteGroup, FiniteQuandle, FreeWord, Letter, Permutation};

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..=12).prop_map(|k| FiniteGroup::cyclic(k).unwrap()),
        (1usize..=8).prop_map(|k| FiniteGroup::dihedral(k).unwrap()),
        (3usize..=4).prop_map(|k| FiniteGroup::symmetric(k).unwrap()),
        Just(FiniteGroup::alternating(4).unwrap()),
        Just(FiniteGroup::abelian(&[2, 4]).unwrap()),
    ]
}

fn quandle_strategy() -> impl Strategy<Value = FiniteQuandle> {
    prop_oneof![
        (1usize..=10).prop_map(|n| dihedral_quandle(n).unwrap()),
        (1usize..=4, 1usize..=4).prop_map(|(n, m)| u_quandle(n, m).unwrap()),
        (1usize..=4).prop_map(|n| trivial(n).unwrap()),
        Just(takasaki(&FiniteGroup::abelian(&[3, 3]).unwrap()).unwrap()),
        (2usize..=5).prop_map(|k| qf_core::constructions::conj(&FiniteGroup::dihedral(k).unwrap()).unwrap()),
    ]
}

fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|v| FreeWord::reduce(v.into_iter().map(|(gen, inverse)| Letter { gen, inverse })))
}

fn rack_strategy() -> impl Strategy<Value = FreeRackElement> {
    (0usize..3, word_strategy(3, 4)).prop_map(|(b, w)| FreeRackElement::new(b, w))
}

fn shuffled(n: usize, seed: u64) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        v.swap(i, (s % (i as u64 + 1)) as usize);
    }
    Permutation::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_tables_are_groups(g in group_strategy(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let n = g.order();
        let (a, b, c) = (a.index(n), b.index(n), c.index(n));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), a), a);
        prop_assert_eq!(g.centralizer(a).len() * g.conjugacy_class(a).len(), n);
        prop_assert_eq!(g.conjugate(g.conjugate(a, b), g.inv(b)), a);
    }

    #[test]
    fn heisenberg_models(n in 1usize..=4, m in 1usize..=4) {
        let h = make_heisenberg_model(n, m).unwrap();
        let g = &h.group;
        let c = h.commutator();
        prop_assert!(g.generates(&[h.x0, h.y0]));
        prop_assert!(g.commutes(c, h.x0) && g.commutes(c, h.y0));
        prop_assert_eq!(g.pow(c, n as i64), g.identity());
        prop_assert_eq!(g.pow(c, m as i64), g.identity());
    }

    #[test]
    fn quandle_structure(q in quandle_strategy()) {
        let n = q.order();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(q.op_inv(q.op(x, y), y), x);
            }
        }
        let inn = q.inn_group().unwrap();
        let orbits = q.orbit_index();
        for p in &inn.elements {
            prop_assert!(inn.elements.contains(&p.inverse()));
            prop_assert!((0..n).all(|x| orbits[p.apply(x)] == orbits[x]));
        }
        if q.is_latin() || q.is_commutative() {
            prop_assert!(q.symmetries_injective());
        }
        prop_assert_eq!(abelianization(&presentation_of(&q)).free_rank, q.orbits().len());
        prop_assert!(abelianization(&presentation_of(&q)).torsion.is_empty());
    }

    #[test]
    fn isomorphism_is_an_equivalence(q in quandle_strategy(), seed in any::<u64>()) {
        let p = shuffled(q.order(), seed);
        let r = q.relabel(&p).unwrap();
        let w = q.is_isomorphic(&r).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(q.is_homomorphism(&r, &w.map));
        let back = w.inverse();
        prop_assert!(r.is_homomorphism(&q, &back.map));
        prop_assert!(q.is_isomorphic(&q).unwrap().is_some());
    }

    #[test]
    fn congruences_are_compatible(n in 3usize..=9, a in 0usize..9, b in 0usize..9) {
        let q = dihedral_quandle(n).unwrap();
        let c = q.principal_congruence(a % n, b % n).unwrap();
        prop_assert!(q.is_congruence(&c));
        prop_assert!(c.blocks.iter().any(|blk| blk.contains(&(a % n)) && blk.contains(&(b % n))));
    }

    #[test]
    fn unions_of_trivial_quandles(n in 1usize..=5, m in 1usize..=5) {
        let (s, t) = u_union_data(n, m);
        let q = union(&trivial(n).unwrap(), &trivial(m).unwrap(), &s, &t).unwrap();
        let mut sizes: Vec<usize> = q.orbits().iter().map(Vec::len).collect();
        sizes.sort();
        let mut expect = vec![n, m];
        expect.sort();
        if n == 1 && m == 1 {
            expect = vec![1, 1];
        }
        prop_assert_eq!(sizes, expect);
        for orbit in q.orbits() {
            prop_assert!(orbit.iter().all(|&x| orbit.iter().all(|&y| q.op(x, y) == x)));
        }
        prop_assert_eq!(q.ga_obstruction_pass(), n == 1 && m == 1 || (n > 1 && m > 1));
    }

    #[test]
    fn takasaki_of_products(a in 1usize..=5, b in 1usize..=5) {
        let (ha, hb) = (FiniteGroup::cyclic(a).unwrap(), FiniteGroup::cyclic(b).unwrap());
        let left = takasaki(&ha.direct_product(&hb).unwrap()).unwrap();
        let right = takasaki(&ha).unwrap().direct_product(&takasaki(&hb).unwrap()).unwrap();
        prop_assert!(left.is_isomorphic(&right).unwrap().is_some());
    }

    #[test]
    fn ga_quandle_invariants(g in group_strategy(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=3)) {
        let mut base: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        base.sort();
        base.dedup();
        let ga = ga_quandle(&g, &base).unwrap();
        let expected: usize = base.iter().map(|&a| g.conjugacy_class(a).len()).sum();
        prop_assert_eq!(ga.order(), expected);
        prop_assert!(ga.quandle().ga_obstruction_pass());
        prop_assert!(ga.quandle().orbits().len() >= base.len());
        prop_assert!(ga.augmentation_check().holds());
        for (i, p) in ga.labels().iter().enumerate() {
            prop_assert!(g.centralizer(base[p.a_index]).iter().all(|&c| g.mul(c, p.coset_rep) >= p.coset_rep));
            for (j, q) in ga.labels().iter().enumerate() {
                let (u, v, b) = (p.coset_rep, q.coset_rep, base[q.a_index]);
                let w = g.product([u, g.inv(v), b, v]);
                prop_assert_eq!(ga.quandle().op(i, j), ga.element(p.a_index, w));
            }
        }
    }

    #[test]
    fn free_words(w in word_strategy(3, 8), v in word_strategy(3, 8)) {
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert_eq!(FreeWord::from_signed(&w.to_signed()), Some(w.clone()));
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert_eq!(w.mul(&v).inverse(), v.inverse().mul(&w.inverse()));
    }

    #[test]
    fn free_rack_axioms(x in rack_strategy(), y in rack_strategy(), z in rack_strategy()) {
        prop_assert_eq!(fr_op(&fr_op(&x, &y), &z), fr_op(&fr_op(&x, &z), &fr_op(&y, &z)));
        prop_assert!(fq_equal(&fr_op(&x, &x), &x));
        let c = fq_canonicalize(&x);
        prop_assert!(c.word().letters().first().is_none_or(|l| l.gen != c.base()));
        prop_assert_eq!(fq_canonicalize(&c.to_rack()), c);
    }

    #[test]
    fn quandle_words_round_trip(depth in 0usize..4, seed in any::<u64>()) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let mut s = seed;
        let w = build_word(&mut s, depth);
        prop_assert_eq!(QWord::parse(&w.render(&names), &names).unwrap(), w.clone());
        // α(w) is conjugate to the base generator of the flattened word
        let flat = w.flatten();
        prop_assert_eq!(w.envelope(), FreeWord::gen(flat.base).conjugate_by(&flat.word));
    }

    #[test]
    fn free_product_normal_forms(a in prop::collection::vec((0usize..2, 0usize..6), 0..6), b in prop::collection::vec((0usize..2, 0usize..6), 0..6), c in prop::collection::vec((0usize..2, 0usize..6), 0..6)) {
        let p = FreeProduct::new(FiniteGroup::cyclic(3).unwrap(), FiniteGroup::dihedral(3).unwrap());
        let fix = |v: &[(usize, usize)]| v.iter().map(|&(f, e)| (f, if f == 0 { e % 3 } else { e })).collect::<Vec<_>>();
        let (a, b, c) = (p.word(&fix(&a)).unwrap(), p.word(&fix(&b)).unwrap(), p.word(&fix(&c)).unwrap());
        prop_assert_eq!(p.nf_mult(&p.nf_mult(&a, &b), &c), p.nf_mult(&a, &p.nf_mult(&b, &c)));
        prop_assert!(p.nf_mult(&a, &p.nf_inv(&a)).is_empty());
        let s = a.syllables();
        prop_assert!(s.windows(2).all(|w| w[0].factor != w[1].factor));
        prop_assert!(s.iter().all(|x| x.elem != p.factor(x.factor).identity()));
    }

    #[test]
    fn smith_normal_forms(rows in 1usize..=4, cols in 1usize..=4, entries in prop::collection::vec(-9i64..=9, 16)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&data).unwrap();
        let s = smith_normal_form(&m);
        prop_assert!(s.verify(&m));
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let zero = BigInt::from(0);
        prop_assert!(s.diagonal.iter().all(|d| *d >= zero));
        for w in s.diagonal.windows(2) {
            prop_assert!(w[1] == zero || (w[0] != zero && &w[1] % &w[0] == zero));
        }
    }

    #[test]
    fn certificates_survive_inner_automorphisms(n in 1usize..=6, g in 0usize..24) {
        let q = dihedral_quandle(2 * n).unwrap();
        let d = FiniteGroup::dihedral(2 * n).unwrap();
        let asg = Assignment::new(d.clone(), (2 * n..4 * n).collect()).unwrap();
        prop_assert!(injectivity_certificate(&q, &asg).is_ok());
        let moved = asg.conjugated(g % d.order()).unwrap();
        prop_assert!(injectivity_certificate(&q, &moved).is_ok());
    }
}

fn build_word(s: &mut u64, depth: usize) -> QWord {
    *s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let r = (*s >> 33) as usize;
    if depth == 0 {
        return QWord::gen(r % 3);
    }
    let (a, b) = (build_word(s, depth - 1), build_word(s, depth.saturating_sub(2)));
    if r % 2 == 0 {
        QWord::op(a, b)
    } else {
        QWord::op_inv(a, b)
    }
}

#[test]
fn u_reduction_abelian_iff_coprime() {
    for n in 1..=6 {
        for m in 1..=6 {
            let r = verify_u_reduction(n, m).unwrap();
            assert_eq!(r.model_abelian, r.coprime, "({n},{m})");
        }
    }
}
