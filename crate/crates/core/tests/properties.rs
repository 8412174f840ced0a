use proptest::prelude::*;

use deltabench::kraft_chaitin::{kraft_sum, verify_prefix_free, Allocator};
use deltabench::qstrings::{index_to_string, quasi_lex_cmp, string_to_index, QString, StringIndex};
use deltabench::scatter::{scatter_decode, scatter_encode, FMap, ScatterSpec};
use deltabench::theory::goedel::{fixed4_decode, index_decode};
use deltabench::theory::{goedel_fixed4, goedel_index, parse_wff, Formula, Term};
use deltabench::vm::{decode_machine, disassemble, assemble, encode_machine, run, universal_run, Instr, Machine, Opcode};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

fn qstring(q: u32, max: usize) -> impl Strategy<Value = QString> {
    prop::collection::vec(0..q as u8, 0..=max).prop_map(move |v| QString::new(q, v).unwrap())
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0u32..3).prop_map(Term::Var), Just(Term::Zero)];
    leaf.prop_recursive(3, 12, 2, |t| {
        prop_oneof![
            t.clone().prop_map(Term::succ),
            (t.clone(), t.clone()).prop_map(|(a, b)| Term::plus(a, b)),
            (t.clone(), t).prop_map(|(a, b)| Term::times(a, b)),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let atom = (term(), term()).prop_map(|(a, b)| Formula::eq(a, b));
    atom.prop_recursive(3, 10, 2, |f| {
        prop_oneof![
            f.clone().prop_map(Formula::not),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (0u32..3, f.clone()).prop_map(|(v, a)| Formula::forall(v, a)),
            (0u32..3, f).prop_map(|(v, a)| Formula::exists(v, a)),
        ]
    })
}

fn machine(q: u32) -> impl Strategy<Value = Machine> {
    prop::collection::vec((0..Opcode::ALL.len(), any::<u64>()), 1..10).prop_map(move |raw| {
        let n = raw.len() as u64;
        let code = raw
            .into_iter()
            .map(|(i, a)| {
                let op = Opcode::ALL[i];
                match op {
                    Opcode::Jmp | Opcode::Jz => Instr::with_arg(op, a % n),
                    Opcode::Write => Instr::with_arg(op, a % u64::from(q)),
                    Opcode::Push => Instr::with_arg(op, a % 5),
                    _ => Instr::new(op),
                }
            })
            .collect();
        Machine::new(q, code).unwrap()
    })
}

proptest! {
    #[test]
    fn quasi_lex_bijection(q in 2u32..20, n in 0u64..1_000_000) {
        let w = index_to_string(q, &StringIndex(BigUint::from(n))).unwrap();
        prop_assert_eq!(string_to_index(&w).0, BigUint::from(n));
        let next = index_to_string(q, &StringIndex(BigUint::from(n + 1))).unwrap();
        prop_assert!(quasi_lex_cmp(w.symbols(), next.symbols()).is_lt());
    }

    #[test]
    fn allocator_grants_every_feasible_stream(q in 2u32..6, lengths in prop::collection::vec(1usize..7, 0..40)) {
        let mut alloc = Allocator::new(q).unwrap();
        let mut words = Vec::new();
        for n in lengths {
            let before = alloc.clone();
            match alloc.allocate(n) {
                Ok(cw) => {
                    prop_assert_eq!(cw.word.len(), n);
                    words.push(cw.word);
                }
                Err(_) => prop_assert_eq!(&alloc, &before),
            }
            prop_assert!(alloc.check_invariants());
        }
        prop_assert!(verify_prefix_free(&words));
        let lens: Vec<usize> = words.iter().map(QString::len).collect();
        prop_assert!(kraft_sum(&lens, q) <= BigRational::one());
    }

    #[test]
    fn header_round_trip(m in machine(2), tail in qstring(2, 8)) {
        let header = encode_machine(&m).header;
        let (back, used) = decode_machine(2, header.concat(&tail).symbols()).unwrap();
        prop_assert_eq!(used, header.len());
        prop_assert_eq!(back, m);
    }

    #[test]
    fn assembly_round_trip(m in machine(3)) {
        prop_assert_eq!(assemble(3, &disassemble(&m)).unwrap(), m);
    }

    #[test]
    fn universal_simulates_every_machine(m in machine(2), p in qstring(2, 10)) {
        let direct = run(&m, &p, 2_000).unwrap();
        if direct.halted_exact(p.len()) {
            let program = encode_machine(&m).program(&p);
            let u = universal_run(2, &program, 1_000_000).unwrap();
            prop_assert!(u.halted_exact(program.len()));
            prop_assert_eq!(u.output, direct.output);
        }
    }

    #[test]
    fn formula_round_trips(f in formula()) {
        prop_assert_eq!(&parse_wff(&f.to_string()).unwrap(), &f);
        prop_assert_eq!(&parse_wff(&f.render_ascii()).unwrap(), &f);
        let g = goedel_fixed4(&f);
        prop_assert_eq!(g.len(), 4 * f.len());
        prop_assert_eq!(&fixed4_decode(&g).unwrap(), &f);
    }

    #[test]
    fn index_numbering_round_trips(f in formula().prop_filter("countable", |f| f.len() <= 40)) {
        prop_assert_eq!(index_decode(&goedel_index(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn scatter_round_trips(a in 1u64..4, b in 0i64..3, k in 1u64..6, seed in any::<u64>()) {
        let f = FMap::Affine { a, b };
        let marked: Vec<u8> = (0..k).map(|i| ((seed >> i) & 1) as u8).collect();
        let spec = ScatterSpec::new(f.clone(), marked).unwrap();
        let bits = f.free_bits(k).unwrap();
        prop_assume!(bits <= 16);
        let z = QString::new(2, (0..bits).map(|i| ((seed >> (i + 8)) & 1) as u8).collect()).unwrap();
        let x = scatter_decode(&spec, k, &z).unwrap();
        prop_assert_eq!(x.len() as u64, f.eval(k).unwrap());
        prop_assert_eq!(scatter_encode(&spec, k, &x).unwrap(), z);
    }
}
