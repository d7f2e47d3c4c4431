use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rscodes::biometrics::{authenticate, BiometricTemplate, Scheme, Vault};
use rscodes::constrained::RllCode;
use rscodes::packet_codes::{mk_decode, CodeArray, PacketBlock, encode_array};
use rscodes::GaloisField;
use rscodes_bench::{random_symbols, rs_workload};

fn field_ops(c: &mut Criterion) {
    let f = GaloisField::binary_default(8).unwrap();
    let xs = random_symbols(256, 1024, 1);
    c.bench_function("gf256 mul 1024", |b| {
        b.iter(|| xs.windows(2).fold(1, |acc, w| f.add(acc, f.mul(w[0], w[1]))))
    });
    c.bench_function("gf256 inv 1024", |b| b.iter(|| xs.iter().filter(|&&x| x != 0).map(|&x| f.inv(x).unwrap()).sum::<u32>()));
}

fn rs(c: &mut Criterion) {
    for (m, n, k) in [(4, 15, 7), (8, 255, 223)] {
        let w = rs_workload(m, n, k, 2);
        c.bench_function(&format!("rs({n},{k}) encode"), |b| b.iter(|| w.code.encode(black_box(&w.info))));
        c.bench_function(&format!("rs({n},{k}) decode t errors"), |b| b.iter(|| w.code.decode_errors(black_box(&w.received))));
        let erasures: Vec<usize> = (0..n - k).collect();
        let mut erased = w.codeword.clone();
        erasures.iter().for_each(|&p| erased[p] = 0);
        c.bench_function(&format!("rs({n},{k}) decode n-k erasures"), |b| {
            b.iter(|| w.code.decode_errors_and_erasures(black_box(&erased), &erasures).unwrap())
        });
    }
}

fn array_decode(c: &mut Criterion) {
    let w = rs_workload(5, 31, 21, 3);
    let f = w.code.field().clone();
    let packets: Vec<Vec<u32>> = (0..21).map(|i| random_symbols(32, 64, 10 + i)).collect();
    let mut rows = encode_array(&w.code, &PacketBlock::new(packets).unwrap()).unwrap();
    for (i, row) in rows.iter_mut().take(4).enumerate() {
        for (j, s) in row.iter_mut().enumerate() {
            *s = f.add(*s, ((i * 7 + j) % 31 + 1) as u32);
        }
    }
    let received = CodeArray::unknown(rows);
    c.bench_function("array decode 31x64, 4 bad rows", |b| b.iter(|| mk_decode(black_box(&received), &w.code).unwrap()));
}

fn applications(c: &mut Criterion) {
    let rll = RllCode::rate_3_5();
    let msgs: Vec<usize> = random_symbols(5, 4096, 4).into_iter().map(|x| x as usize).collect();
    let stream = rll.encode(&msgs).unwrap();
    c.bench_function("rll encode 4096", |b| b.iter(|| rll.encode(black_box(&msgs)).unwrap()));
    c.bench_function("rll decode 4096", |b| b.iter(|| rll.decode_hard(black_box(&stream)).unwrap()));

    let vault = Vault::new(6, 20).unwrap();
    let template = random_symbols(64, 63, 5);
    let rec = vault.enroll(Scheme::Jw, &BiometricTemplate::Full(template.clone()), 5).unwrap();
    let mut noisy = template;
    noisy[..10].iter_mut().for_each(|s| *s ^= 1);
    let noisy = BiometricTemplate::Full(noisy);
    c.bench_function("vault authenticate n=63", |b| b.iter(|| authenticate(&rec, black_box(&noisy)).unwrap()));
}

criterion_group!(benches, field_ops, rs, array_decode, applications);
criterion_main!(benches);
