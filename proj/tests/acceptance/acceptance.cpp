// One line per acceptance criterion: PASS/FAIL, name, and what was measured.
// Exit status is non-zero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "seclink/demos/http.hpp"
#include "seclink/demos/logging.hpp"
#include "seclink/demos/tmp_plugin.hpp"
#include "seclink/demos/webserver.hpp"
#include "seclink/demos/zip.hpp"
#include "seclink/gen.hpp"
#include "seclink/registry.hpp"

using namespace seclink;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream note;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

Diagnostics fresh() {
  return Diagnostics{std::make_shared<std::vector<std::string>>(), std::make_shared<std::vector<Denial>>()};
}

const std::vector<Scenario>& worlds() {
  static const std::vector<Scenario> all = load_scenarios(scenario_dir());
  return all;
}

std::vector<std::string> web_dsl_handlers() {
  std::vector<std::string> out;
  for (const auto& n : dsl_contexts("adv")) out.push_back(n);
  for (const auto& n : dsl_contexts("benign")) out.push_back(n);
  return out;
}

struct WebRun {
  RunResult<int> run;
  Diagnostics diag;
  std::vector<web::HandlerOutcome> outcomes;
};

WebRun run_web(const TargetCtx& ctx, const Scenario& sc) {
  WebRun out{{}, fresh(), {}};
  auto log = std::make_shared<std::vector<web::HandlerOutcome>>();
  auto I = web::interface(out.diag);
  web::ServerConfig cfg;
  cfg.max_iterations = sc.max_iterations;
  auto whole = link_target(compile_interface(I), compile_prog(I, web::web_server(cfg, log)), ctx);
  out.run = run_whole(whole, sc.world(), I.mstate);
  out.outcomes = *log;
  return out;
}

TargetCtx web_ctx(const std::string& spec) { return load_context("webserver", spec, web::handler_type()); }

// 1. Soundness replay for the web server.
void soundness(Verdict& v) {
  std::vector<std::pair<std::string, TargetCtx>> handlers = web::handlers();
  for (const auto& n : web_dsl_handlers()) handlers.emplace_back("dsl:" + n, web_ctx("dsl:" + n));
  int runs = 0, requests = 0;
  for (const auto& [name, ctx] : handlers) {
    for (const auto& sc : worlds()) {
      auto r = run_web(ctx, sc);
      ++runs;
      requests += static_cast<int>(sc.requests.size());
      if (!every_request_gets_a_response(r.run.local)) v.fail(name + " on " + sc.name);
    }
  }
  int dsl = static_cast<int>(handlers.size()) - 6;
  if (dsl < 6) v.fail("only " + std::to_string(dsl) + " DSL handlers");
  if (worlds().size() < 10) v.fail("only " + std::to_string(worlds().size()) + " worlds");
  v.note << handlers.size() << " handlers (" << dsl << " DSL) x " << worlds().size() << " worlds = " << runs
         << " runs, " << requests << " scripted requests";
}

// 2. Dual soundness for the logging library.
void dual_soundness(Verdict& v) {
  auto contexts = dsl_contexts("log_");
  int runs = 0;
  for (const auto& name : contexts) {
    DualTargetCtx C = load_dual_context(name, logging::logger_type());
    for (const auto& sc : worlds()) {
      auto I = logging::interface(fresh());
      auto whole = link_target_dual(I, compile_prog_dual(I, logging::logger()), C);
      auto r = interpret(whole, sc.world(), erase(I.mstate));
      ++runs;
      if (!enforced_locally(logging::sigma(), {}, r.local)) v.fail(name + " on " + sc.name);
    }
  }
  if (contexts.size() < 10) v.fail("only " + std::to_string(contexts.size()) + " contexts");
  v.note << contexts.size() << " contexts x " << worlds().size() << " worlds = " << runs << " runs";
}

// 3. Inversion law.
template <class S>
bool same_run(const RunResult<int>& a, const Diagnostics& da, const RunResult<int>& b, const Diagnostics& db) {
  if (a.result != b.result || a.local != b.local || !(a.world == b.world) || *da.checks != *db.checks) return false;
  if (da.denials->size() != db.denials->size()) return false;
  for (std::size_t i = 0; i < da.denials->size(); ++i) {
    if ((*da.denials)[i].op != (*db.denials)[i].op || (*da.denials)[i].args != (*db.denials)[i].args) return false;
  }
  return true;
}

template <class S>
bool inversion(std::function<SourceInterface<S>(Diagnostics)> make, const SourceProg& P, const TargetCtx& C,
               const World& w) {
  auto It = make(fresh());
  auto target = link_target(compile_interface(It), compile_prog(It, P), C);
  auto rt = run_whole(target, w, It.mstate);
  auto Is = make(fresh());
  auto source = link_source(Is, P, back_translate_ctx(Is, C)).second;
  auto rs = run_whole(source, w, Is.mstate);
  return same_run<S>(rt, It.diag, rs, Is.diag);
}

void inversion_law(Verdict& v) {
  int runs = 0;
  auto web_make = [](Diagnostics d) { return web::interface(std::move(d)); };
  std::vector<std::string> web_names = {"adv1", "adv2", "adv3", "adv4", "adv5", "benign"};
  for (const auto& n : web_dsl_handlers()) web_names.push_back("dsl:" + n);
  for (const auto& name : web_names) {
    TargetCtx C = web_ctx(name);
    for (const auto& sc : worlds()) {
      web::ServerConfig cfg;
      cfg.max_iterations = sc.max_iterations;
      ++runs;
      if (!inversion<WebState>(web_make, web::web_server(cfg), C, sc.world())) v.fail("webserver/" + name + " on " + sc.name);
    }
  }
  std::vector<std::string> zip_names = {"benign_zip"};
  for (const auto& n : dsl_contexts("zip_")) zip_names.push_back(n);
  for (const auto& name : zip_names) {
    TargetCtx C = load_context("zip", name, zip::zip_type());
    for (const auto& sc : worlds()) {
      for (bool closed : {false, true}) {
        ++runs;
        if (!inversion<Trace>([](Diagnostics d) { return zip::interface(std::move(d)); },
                              zip::program(zip::ProgramConfig{closed}), C, sc.world())) {
          v.fail("zip/" + name + " on " + sc.name);
        }
      }
    }
  }
  for (const auto& name : dsl_contexts("tmp_")) {
    TargetCtx C = load_context("tmp_plugin", name, tmp_plugin::plugin_type());
    for (const auto& sc : worlds()) {
      ++runs;
      if (!inversion<Unit>([](Diagnostics d) { return tmp_plugin::interface(std::move(d)); }, tmp_plugin::program(), C,
                           sc.world())) {
        v.fail("tmp_plugin/" + name + " on " + sc.name);
      }
    }
  }
  for (const auto& name : dsl_contexts("log_")) {
    DualTargetCtx C = load_dual_context(name, logging::logger_type());
    for (const auto& sc : worlds()) {
      ++runs;
      auto It = logging::interface(fresh());
      auto rt = interpret(link_target_dual(It, compile_prog_dual(It, logging::logger()), C), sc.world(),
                          erase(It.mstate));
      auto Is = logging::interface(fresh());
      auto rs = interpret(link_source_dual(Is, logging::logger(), back_translate_dual(Is, C)).second, sc.world(),
                          erase(Is.mstate));
      if (!same_run<logging::LastEvent>(rt, It.diag, rs, Is.diag)) v.fail("logging/" + name + " on " + sc.name);
    }
  }
  v.note << runs << " paired runs across webserver, zip, tmp_plugin and logging (dual)";
}

// 4. Monitor atomicity.
Hints non_console_fds(TraceGen& gen) {
  Hints h;
  for (int i = 3; i <= gen.vocabulary().max_fd; ++i) h.fds.push_back(Fd{i});
  return h;
}

template <class S>
void probe(Verdict& v, const MStateDesc<S>& desc, const Policy<S>& pi, TraceGen& gen, const World& w, int n,
           int& denied, int& allowed) {
  AnyMState any = erase(desc);
  for (int i = 0; i < n; ++i) {
    Trace h = gen.history(12, non_console_fds(gen));
    S s0 = replay(desc, h);
    IoOp op = gen.op();
    IoArgs a = gen.args(op);
    auto lib = enforce_policy(pi);
    auto r = interpret(lib.secure_call(op, a), w, any, h, std::any(s0));
    bool decided = pi.decide(s0, op, a);
    if (r.result.is_inr() && r.result.right().is_contract_failure()) {
      ++denied;
      if (decided) v.fail(pi.name + ": allowed call reported a contract failure");
      if (!r.local.empty() || r.history != h) v.fail(pi.name + ": denied call changed the trace");
      if (!any.equal(r.mstate, std::any(s0))) v.fail(pi.name + ": denied call changed the monitor state");
      if (!(r.world == w)) v.fail(pi.name + ": denied call changed the world");
    } else {
      ++allowed;
      if (!decided) v.fail(pi.name + ": refused call went through");
      if (r.local.size() != 1 || r.local[0].caller != Caller::Ctx || r.local[0].op != op || r.local[0].args != a ||
          r.local[0].result != r.result) {
        v.fail(pi.name + ": allowed call did not append exactly one matching Ctx event");
      }
      if (!any.equal(r.mstate, std::any(desc.upd(s0, r.local[0])))) v.fail(pi.name + ": state not updated");
    }
  }
}

void atomicity(Verdict& v) {
  Vocabulary voc;
  voc.paths.push_back("/tmp/x");
  voc.paths.push_back("/temp/index.html");
  TraceGen gen(4, voc);
  World w;
  w.add_file("/temp/index.html", "hi");
  w.add_file("/tmp/x", "x");
  w.add_file("/etc/passwd", "root");
  int denied = 0, allowed = 0;
  probe(v, webserver_mstate(), webserver_pi(), gen, w, 4000, denied, allowed);
  probe(v, full_trace_mstate(), zip::pi(), gen, w, 2000, denied, allowed);
  probe(v, last_event_mstate(), logging::pi(), gen, w, 2000, denied, allowed);
  probe(v, stateless_mstate(), tmp_plugin::pi(), gen, w, 2000, denied, allowed);
  if (denied == 0 || allowed == 0) v.fail("probes never exercised both outcomes");
  v.note << denied + allowed << " probes over 4 monitors: " << denied << " denied, " << allowed << " allowed";
}

// 5. MStateDesc laws and web-state oracles.
template <class S>
void laws(Verdict& v, const MStateDesc<S>& d, TraceGen& gen, int n, long& checks,
          std::function<void(const S&, const Trace&)> extra = nullptr) {
  if (!d.abstracts(d.init, {})) v.fail(d.name + ": init does not abstract []");
  for (int i = 0; i < n; ++i) {
    int len = gen.uniform(0, 20);
    Trace h;
    S s = d.init;
    for (int k = 0; k < len; ++k) {
      Event e = gen.event();
      if (!d.abstracts(s, h)) break;
      s = d.upd(s, e);
      h.insert(h.begin(), e);
      ++checks;
      if (!d.abstracts(s, h)) v.fail(d.name + ": upd broke abstraction after " + format_event(e));
      if (extra) extra(s, h);
    }
  }
}

bool has(const std::vector<Fd>& v, Fd fd) { return std::find(v.begin(), v.end(), fd) != v.end(); }

void mstate_laws(Verdict& v) {
  TraceGen gen(5);
  long checks = 0, oracle = 0;
  int max_fd = gen.vocabulary().max_fd;
  laws<WebState>(v, webserver_mstate(), gen, 10000, checks, [&](const WebState& s, const Trace& h) {
    ++oracle;
    if (s.responded == did_not_respond(h)) v.fail("responded disagrees with did_not_respond");
    for (int i = 0; i <= max_fd + 1; ++i) {
      Fd fd{i};
      if (has(s.ctx_opened, fd) != is_opened_by_Ctx(fd, h)) v.fail("ctx_opened disagrees with is_opened_by_Ctx");
      if (has(s.written, fd) != wrote_to(fd, h)) v.fail("written disagrees with wrote_to");
    }
  });
  laws<Trace>(v, full_trace_mstate(), gen, 10000, checks);
  laws<std::optional<Event>>(v, last_event_mstate(), gen, 10000, checks);
  laws<Unit>(v, stateless_mstate(), gen, 10000, checks);
  v.note << "4 states x 10000 traces (len <= 20): " << checks << " upd steps, " << oracle
         << " web-state prefixes checked against trace oracles";
}

// 6. Constraint suite.
void constraint_suite(Verdict& v) {
  SuiteOptions opt;
  opt.samples = 10000;
  opt.seed = 6;
  auto good = verify_bundle("webserver", opt);
  auto weak = verify_bundle("webserver-weakened", opt);
  long samples = 0, nonvac = 0;
  for (const auto& [k, st] : good.obligations) {
    samples += st.samples;
    nonvac += st.samples - st.vacuous;
  }
  if (!good.ok()) v.fail("web server bundle: " + good.counterexamples.front().obligation);
  if (weak.failures() == 0) v.fail("weakened bundle not caught");
  for (const char* ob : {"c1_post:handler", "c2_post:handler", "c_pre:send", "c_post:send", "pi_sound"}) {
    if (!good.obligations.count(ob)) v.fail(std::string("obligation missing: ") + ob);
  }
  v.note << good.obligations.size() << " obligations x 10000 samples (" << nonvac << " of " << samples
         << " non-vacuous): 0 counterexamples expected, " << good.failures() << " found; weakened bundle: "
         << weak.failures() << " counterexamples";
}

// 7. every_request_gets_a_response against a brute-force oracle.
bool oracle_ergr(const Trace& lt) {
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const Event& e = lt[i];
    if (e.caller != Caller::Prog || e.op != IoOp::Read || !e.succeeded()) continue;
    Fd fd = std::get<Fd>(e.args);
    bool answered = false;
    for (std::size_t j = i + 1; j < lt.size() && !answered; ++j) {
      answered = lt[j].op == IoOp::Write && std::get<WriteArgs>(lt[j].args).fd == fd;
    }
    if (!answered) return false;
  }
  return true;
}

void ergr(Verdict& v) {
  std::vector<Event> alphabet;
  for (int f : {3, 4}) {
    alphabet.push_back(ev_read(Caller::Prog, Fd{f}, ok_bytes("req")));
    alphabet.push_back(ev_read(Caller::Prog, Fd{f}, io_error(Errc::would_block)));
    alphabet.push_back(ev_write(Caller::Prog, Fd{f}, "res", ok_unit()));
  }
  long exhaustive = 0, holds = 0;
  Trace t;
  std::function<void()> go = [&]() {
    ++exhaustive;
    bool a = every_request_gets_a_response(t);
    holds += a;
    if (a != oracle_ergr(t)) v.fail("disagreement on [" + format_trace(t) + "]");
    if (t.size() == 8) return;
    for (const Event& e : alphabet) {
      t.push_back(e);
      go();
      t.pop_back();
    }
  };
  go();
  TraceGen gen(7);
  for (int i = 0; i < 10000; ++i) {
    Trace lt;
    int len = gen.uniform(9, 40);
    for (int k = 0; k < len; ++k) lt.push_back(gen.event());
    if (every_request_gets_a_response(lt) != oracle_ergr(lt)) v.fail("disagreement on a random trace");
  }
  v.note << exhaustive << " exhaustive traces (" << holds << " satisfy) + 10000 random traces of length 9..40";
}

// 8. Attribution matrix.
void attribution(Verdict& v) {
  const char* expected[] = {"post:handler", "pre:send", "monitor", "monitor", "monitor"};
  int cells = 0;
  for (int k = 1; k <= 5; ++k) {
    for (const std::string& spec : {"adv" + std::to_string(k), "dsl:adv" + std::to_string(k)}) {
      TargetCtx C = web_ctx(spec);
      for (const auto& sc : worlds()) {
        auto r = run_web(C, sc);
        std::size_t n = r.outcomes.size();
        std::size_t valid = 0;
        for (const auto& req : sc.requests) valid += http::valid_http_request(req.raw);
        if (sc.max_iterations >= 64 && n != valid) v.fail(spec + " on " + sc.name + ": handler not called per request");
        for (const auto& o : r.outcomes) {
          ++cells;
          if (o.result.is_inl() || !o.result.right().is_contract_failure() ||
              o.result.right().provenance != expected[k - 1]) {
            v.fail(spec + " on " + sc.name + ": wrong mechanism");
          }
        }
        // The other mechanisms stay silent.
        std::size_t contract = r.diag.checks->size(), monitor = r.diag.denials->size();
        bool exact = k <= 2 ? (contract == n && monitor == 0) : (contract == 0 && monitor == n);
        if (!exact) v.fail(spec + " on " + sc.name + ": unexpected mechanism counts");
        for (const auto& c : *r.diag.checks) {
          if (c != expected[k - 1]) v.fail(spec + ": unexpected contract " + c);
        }
      }
    }
  }
  v.note << "5 handlers (native and DSL) x " << worlds().size() << " worlds, " << cells
         << " handler calls: adv1 post:handler, adv2 pre:send, adv3-5 monitor";
}

// 9. DSL adequacy.
void adequacy(Verdict& v) {
  int runs = 0;
  for (const auto& [name, native] : web::handlers()) {
    TargetCtx dsl = web_ctx("dsl:" + name);
    for (const auto& sc : worlds()) {
      auto a = run_web(native, sc);
      auto b = run_web(dsl, sc);
      ++runs;
      if (a.run.result != b.run.result || a.run.local != b.run.local || !(a.run.world == b.run.world)) {
        v.fail(name + " on " + sc.name);
      }
    }
  }
  TargetCtx zn = zip::benign_zip();
  TargetCtx zd = load_context("zip", "zip_benign", zip::zip_type());
  for (const auto& sc : worlds()) {
    auto I = zip::interface();
    auto a = run_whole(link_target(compile_interface(I), compile_prog(I, zip::program()), zn), sc.world(), I.mstate);
    auto b = run_whole(link_target(compile_interface(I), compile_prog(I, zip::program()), zd), sc.world(), I.mstate);
    ++runs;
    if (a.result != b.result || a.local != b.local) v.fail("zip_benign on " + sc.name);
  }
  v.note << runs << " paired runs (6 web handlers + zip) over " << worlds().size() << " worlds";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Verdict&);
  };
  const Criterion criteria[] = {
      {"soundness-replay", soundness},    {"dual-soundness", dual_soundness}, {"inversion-law", inversion_law},
      {"monitor-atomicity", atomicity},   {"mstate-laws", mstate_laws},       {"constraint-suite", constraint_suite},
      {"ergr-oracle", ergr},              {"attribution-matrix", attribution}, {"dsl-adequacy", adequacy},
  };
  int failed = 0;
  int i = 0;
  for (const auto& c : criteria) {
    ++i;
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << i << " " << c.name << ": " << v.note.str();
    if (!v.pass) std::cout << " | first failure: " << v.first_failure;
    std::printf(" (%.1fs)\n", secs);
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
