use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qvir::{Coeff, Var};

fn one_minus(x: &Coeff) -> Coeff {
    Coeff::one().sub(x)
}

fn sample() -> (Coeff, Coeff) {
    let a = one_minus(&Coeff::qt(2, 1)).div(&one_minus(&Coeff::qt(1, 3)).mul(&one_minus(&Coeff::t()))).unwrap();
    let b = Coeff::k().add(&Coeff::qt(1, 0)).div(&one_minus(&Coeff::qt(1, 1)).powu(2)).unwrap();
    (a, b)
}

fn field(c: &mut Criterion) {
    let (a, b) = sample();
    c.bench_function("coeff_add", |bn| bn.iter(|| black_box(&a).add(black_box(&b))));
    c.bench_function("coeff_mul", |bn| bn.iter(|| black_box(&a).mul(black_box(&b))));
    c.bench_function("coeff_div", |bn| bn.iter(|| black_box(&a).div(black_box(&b)).unwrap()));
    c.bench_function("coeff_sum_cancel", |bn| {
        bn.iter(|| {
            (1..8).fold(Coeff::zero(), |s, i| s.add(&one_minus(&Coeff::qt(i, 0)).inv().unwrap()))
        })
    });
    let bind = [(Var::Q, Coeff::t().mul(&Coeff::t())), (Var::K, Coeff::from_int(3))];
    c.bench_function("coeff_substitute", |bn| bn.iter(|| black_box(&a).mul(&b).substitute(&bind).unwrap()));
    c.bench_function("coeff_json_round_trip", |bn| {
        bn.iter(|| Coeff::from_json(&black_box(&a).to_json()).unwrap())
    });
}

criterion_group!(benches, field);
criterion_main!(benches);
