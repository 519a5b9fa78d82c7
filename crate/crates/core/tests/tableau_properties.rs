use clifford_synth::verify::oracle_tableau;
use clifford_synth::{Circuit, CliffordTableau, Gate};
use proptest::prelude::*;

fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        (0..n).prop_map(Gate::H),
        (0..n).prop_map(Gate::S),
        (0..n, 0..n - 1).prop_map(|(c, t)| Gate::cx(c, if t >= c { t + 1 } else { t })),
    ]
}

fn arb_circuit(max_n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(arb_gate(n), 0..max_len)
            .prop_map(move |gates| Circuit::from_gates(n, gates).unwrap())
    })
}

fn arb_pair(max_n: usize) -> impl Strategy<Value = (Circuit, Circuit)> {
    (2..=max_n).prop_flat_map(|n| {
        let c = || proptest::collection::vec(arb_gate(n), 0..40);
        (c(), c()).prop_map(move |(a, b)| {
            (
                Circuit::from_gates(n, a).unwrap(),
                Circuit::from_gates(n, b).unwrap(),
            )
        })
    })
}

fn tab(c: &Circuit) -> CliffordTableau {
    CliffordTableau::from_circuit(c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn from_circuit_is_symplectic(c in arb_circuit(12, 120)) {
        prop_assert!(tab(&c).is_symplectic());
    }

    #[test]
    fn compose_matches_concatenation((a, b) in arb_pair(8)) {
        let mut joined = a.clone();
        joined.extend(b.gates().iter().copied()).unwrap();
        prop_assert_eq!(tab(&a).compose(&tab(&b)).unwrap(), tab(&joined));
    }

    #[test]
    fn prepend_matches_building_backwards(c in arb_circuit(8, 60)) {
        let mut t = CliffordTableau::identity(c.num_qubits()).unwrap();
        for &g in c.gates().iter().rev() {
            t.prepend_gate(g).unwrap();
        }
        prop_assert_eq!(t, tab(&c));
    }

    #[test]
    fn inverse_is_two_sided(c in arb_circuit(8, 80)) {
        let t = tab(&c);
        let inv = t.inverse().unwrap();
        prop_assert!(t.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn circuit_then_adjoint_is_identity(c in arb_circuit(6, 60)) {
        prop_assert!(tab(&c.append_inverse()).is_identity());
    }

    #[test]
    fn text_roundtrip(c in arb_circuit(8, 60)) {
        let t = tab(&c);
        prop_assert_eq!(CliffordTableau::parse_text(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn oracle_agrees_with_update_rules(c in arb_circuit(5, 50)) {
        prop_assert_eq!(oracle_tableau(&c).unwrap(), tab(&c));
    }
}
