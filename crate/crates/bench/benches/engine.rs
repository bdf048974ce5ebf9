use criterion::{criterion_group, criterion_main, Criterion};
use freecurve_core::{classify, discriminant, fixture, lattice, Backend};

fn engine(c: &mut Criterion) {
    let backend = Backend::default();
    for name in ["ex1", "ex5", "ex14ii:5"] {
        let f = fixture(name).unwrap().f;
        c.bench_function(&format!("classify {name}"), |b| b.iter(|| classify(&f, &backend).unwrap()));
    }
    let ex3 = fixture("ex3").unwrap().arrangement.unwrap();
    c.bench_function("lattice ex3", |b| b.iter(|| lattice(&ex3).unwrap()));
    let hesse = fixture("hesse").unwrap().pencil.unwrap().pencil;
    c.bench_function("discriminant hesse", |b| b.iter(|| discriminant(&hesse).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = engine
}
criterion_main!(benches);
