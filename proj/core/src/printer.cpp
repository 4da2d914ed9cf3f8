#include "tptpnc/printer.hpp"

#include <sstream>

#include "tptpnc/detail/overloaded.hpp"

namespace tptpnc {

using detail::overloaded;

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

const char* binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::And: return "&";
    case BinaryOp::Or: return "|";
    case BinaryOp::Implies: return "=>";
    case BinaryOp::Implied: return "<=";
    case BinaryOp::Iff: return "<=>";
    case BinaryOp::Xor: return "<~>";
  }
  return "?";
}

bool is_function_type(const TypePtr& t) { return t && !std::holds_alternative<BaseType>(t->node); }

class Printer {
 public:
  explicit Printer(Language lang) : ho_(is_higher_order(lang)) {}

  std::string type(const TypePtr& t) const {
    return std::visit(overloaded{
                          [](const BaseType& b) { return b.name; },
                          [&](const MappingType& m) {
                            if (ho_) {
                              std::string out;
                              for (const auto& a : m.args) out += type_operand(a) + " > ";
                              return out + type_operand(m.result);
                            }
                            if (m.args.size() == 1) return type(m.args[0]) + " > " + type(m.result);
                            std::vector<std::string> parts;
                            for (const auto& a : m.args) parts.push_back(type(a));
                            return "(" + join(parts, " * ") + ") > " + type(m.result);
                          },
                          [&](const CurriedType& c) { return type_operand(c.arg) + " > " + type(c.result); },
                      },
                      t->node);
  }

  std::string term(const TermPtr& t) const {
    return std::visit(overloaded{
                          [](const VariableTerm& v) { return v.name; },
                          [&](const FunctionTerm& f) {
                            if (f.args.empty()) return f.symbol;
                            return f.symbol + "(" + args(f.args) + ")";
                          },
                          [](const NumberTerm& n) { return n.lexeme; },
                          [](const DistinctObjectTerm& d) { return d.lexeme; },
                          [&](const FormulaTerm& f) { return formula(f.formula); },
                          [&](const TupleTerm& tu) {
                            std::vector<std::string> parts;
                            for (const auto& e : tu.elements) parts.push_back(term(e));
                            return "[" + join(parts, ",") + "]";
                          },
                      },
                      t->node);
  }

  std::string connective(const NcConnective& c) const {
    auto index_text = [&] { return "#" + unitary_term(c.index); };
    switch (c.surface) {
      case Surface::ShortBox: return c.index ? "[" + index_text() + "]" : "[.]";
      case Surface::ShortDiamond: return c.index ? "<" + index_text() + ">" : "<.>";
      case Surface::ShortSlash: return c.index ? "/" + index_text() + "\\" : "/.\\";
      case Surface::LongForm: break;
    }
    std::vector<std::string> params;
    if (c.index) params.push_back(index_text());
    for (const auto& p : c.params) params.push_back(p.key + ":=" + term(p.value));
    if (params.empty()) return "{" + c.name + "}";
    return "{" + c.name + "(" + join(params, ",") + ")}";
  }

  std::string formula(const FormulaPtr& f) const {
    return std::visit(
        overloaded{
            [&](const AtomFormula& a) {
              if (a.args.empty()) return a.symbol;
              return a.symbol + "(" + args(a.args) + ")";
            },
            [&](const EqualityFormula& e) {
              return unitary_term(e.lhs) + (e.negated ? " != " : " = ") + unitary_term(e.rhs);
            },
            [&](const NotFormula& n) { return "~ " + operand(n.operand); },
            [&](const BinaryFormula& b) {
              std::string lhs;
              auto* inner = std::get_if<BinaryFormula>(&b.lhs->node);
              if (inner && inner->op == b.op && (b.op == BinaryOp::And || b.op == BinaryOp::Or)) {
                lhs = formula(b.lhs);
              } else {
                lhs = operand(b.lhs);
              }
              return lhs + " " + binary_symbol(b.op) + " " + operand(b.rhs);
            },
            [&](const QuantifiedFormula& q) {
              return std::string(q.quantifier == Quantifier::Forall ? "! " : "? ") + bindings(q.bindings) + " : " +
                     operand(q.body);
            },
            [&](const LambdaFormula& l) { return "^ " + bindings(l.bindings) + " : " + operand(l.body); },
            [&](const ApplyFormula&) {
              ApplicationSpine spine = application_spine(f);
              std::string out = atomic(spine.head) ? formula(spine.head) : "(" + formula(spine.head) + ")";
              for (const auto& a : spine.args) out += " @ " + unitary_term(a);
              return out;
            },
            [&](const NcApplyFormula& n) {
              std::string out = connective(n.conn);
              if (ho_) {
                for (const auto& a : n.args) out += " @ " + unitary_term(a);
                return out;
              }
              return out + "(" + args(n.args) + ")";
            },
            [&](const ConditionalFormula& c) {
              return "$ite(" + formula(c.condition) + ", " + term(c.then_branch) + ", " + term(c.else_branch) + ")";
            },
            [&](const LetFormula& l) {
              std::vector<std::string> ts;
              for (const auto& t : l.typings) ts.push_back(t.symbol + ": " + type(t.type));
              std::vector<std::string> ds;
              for (const auto& d : l.definitions) ds.push_back(unitary_term(d.lhs) + " := " + term(d.rhs));
              std::string typings = ts.size() == 1 ? ts[0] : "[" + join(ts, ", ") + "]";
              std::string defs = ds.size() == 1 ? ds[0] : "[" + join(ds, ", ") + "]";
              return "$let(" + typings + ", " + defs + ", " + term(l.body) + ")";
            },
            [](const BoolConstFormula& b) { return std::string(b.value ? "$true" : "$false"); },
            [](const VariableFormula& v) { return v.name; },
        },
        f->node);
  }

 private:
  bool ho_;

  std::string type_operand(const TypePtr& t) const { return is_function_type(t) ? "(" + type(t) + ")" : type(t); }

  std::string args(const std::vector<TermPtr>& as) const {
    std::vector<std::string> parts;
    for (const auto& a : as) parts.push_back(term(a));
    return join(parts, ",");
  }

  std::string bindings(const std::vector<Binding>& bs) const {
    std::vector<std::string> parts;
    for (const auto& b : bs) parts.push_back(b.type ? b.name + ": " + type(b.type) : b.name);
    return "[" + join(parts, ",") + "]";
  }

  // Formulas that can stand anywhere a unitary formula is expected.
  bool atomic(const FormulaPtr& f) const {
    return std::visit(overloaded{
                          [](const AtomFormula&) { return true; },
                          [](const BoolConstFormula&) { return true; },
                          [](const VariableFormula&) { return true; },
                          [](const ConditionalFormula&) { return true; },
                          [](const LetFormula&) { return true; },
                          [&](const NcApplyFormula&) { return !ho_; },
                          [](const auto&) { return false; },
                      },
                      f->node);
  }

  // Operand of a binary connective, of ~, or body of a binder.
  std::string operand(const FormulaPtr& f) const {
    if (atomic(f)) return formula(f);
    if (auto* n = std::get_if<NotFormula>(&f->node); n && atomic(n->operand)) return formula(f);
    return "(" + formula(f) + ")";
  }

  // Side of = / !=, argument of @, and connective indices.
  std::string unitary_term(const TermPtr& t) const {
    if (auto* ft = std::get_if<FormulaTerm>(&t->node)) {
      if (atomic(ft->formula)) return formula(ft->formula);
      return "(" + formula(ft->formula) + ")";
    }
    if (ho_) {
      if (auto* fn = std::get_if<FunctionTerm>(&t->node); fn && !fn->args.empty()) return "(" + term(t) + ")";
    }
    return term(t);
  }
};

std::string property_value(const PropertyValuePtr& v) {
  Printer p(Language::Tff);
  return std::visit(overloaded{
                        [&](const TermPtr& t) { return p.term(t); },
                        [&](const ListValue& l) {
                          std::vector<std::string> parts;
                          if (l.default_value) parts.push_back(p.term(l.default_value));
                          for (const auto& o : l.overrides) {
                            std::string key;
                            if (o.key.bracket) {
                              NcConnective c;
                              c.surface = *o.key.bracket;
                              c.index = o.key.term;
                              key = p.connective(c);
                            } else {
                              key = p.term(o.key.term);
                            }
                            parts.push_back(key + " == " + property_value(o.value));
                          }
                          return "[" + join(parts, ", ") + "]";
                        },
                    },
                    v->node);
}

}  // namespace

std::string language_keyword(Language l) {
  switch (l) {
    case Language::Fof: return "fof";
    case Language::Cnf: return "cnf";
    case Language::Tff: return "tff";
    case Language::Thf: return "thf";
  }
  return "tff";
}

std::string print_type(const TypePtr& t, Language language) { return Printer(language).type(t); }
std::string print_term(const TermPtr& t, Language language) { return Printer(language).term(t); }
std::string print_formula(const FormulaPtr& f, Language language) { return Printer(language).formula(f); }
std::string print_connective(const NcConnective& c, Language language) { return Printer(language).connective(c); }

std::string print_logic_spec(const LogicSpec& spec) {
  std::string out = spec.logic_name + " == [";
  for (std::size_t i = 0; i < spec.properties.size(); ++i) {
    out += i ? ",\n        " : "\n        ";
    out += spec.properties[i].name + " == " + property_value(spec.properties[i].value);
  }
  return out + " ]";
}

std::string print_unit(const AnnotatedFormula& u) {
  Printer p(u.language);
  std::string payload = std::visit(overloaded{
                                       [&](const FormulaPtr& f) { return p.formula(f); },
                                       [&](const TypeDecl& d) { return d.symbol + ": " + p.type(d.type); },
                                       [&](const LogicSpec& s) { return print_logic_spec(s); },
                                   },
                                   u.payload);
  std::string out = language_keyword(u.language) + "(" + u.name + ", " + role_name(u.role) + ",\n    " + payload;
  if (u.source) {
    out += ",\n    " + *u.source;
    if (u.useful_info) out += ",\n    " + *u.useful_info;
  }
  return out + " ).";
}

std::string print_problem(const Problem& p) {
  std::string out;
  for (const auto& u : p) out += print_unit(u) + "\n\n";
  if (!out.empty()) out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Tree dump

namespace {

class Dumper {
 public:
  explicit Dumper(Language lang) : lang_(lang) {}
  std::ostringstream out;

  void line(int depth, const std::string& text) { out << std::string(2 * depth, ' ') << text << '\n'; }

  void term(const TermPtr& t, int d) {
    std::visit(overloaded{
                   [&](const VariableTerm& v) { line(d, "Variable " + v.name); },
                   [&](const FunctionTerm& f) {
                     line(d, "Function " + f.symbol);
                     for (const auto& a : f.args) term(a, d + 1);
                   },
                   [&](const NumberTerm& n) { line(d, "Number " + n.lexeme); },
                   [&](const DistinctObjectTerm& o) { line(d, "DistinctObject " + o.lexeme); },
                   [&](const FormulaTerm& f) {
                     line(d, "FormulaTerm");
                     formula(f.formula, d + 1);
                   },
                   [&](const TupleTerm& tu) {
                     line(d, "Tuple");
                     for (const auto& e : tu.elements) term(e, d + 1);
                   },
               },
               t->node);
  }

  void formula(const FormulaPtr& f, int d) {
    std::visit(overloaded{
                   [&](const AtomFormula& a) {
                     line(d, "Atom " + a.symbol);
                     for (const auto& x : a.args) term(x, d + 1);
                   },
                   [&](const EqualityFormula& e) {
                     line(d, e.negated ? "Disequality" : "Equality");
                     term(e.lhs, d + 1);
                     term(e.rhs, d + 1);
                   },
                   [&](const NotFormula& n) {
                     line(d, "Not");
                     formula(n.operand, d + 1);
                   },
                   [&](const BinaryFormula& b) {
                     line(d, std::string("Binary ") + binary_symbol(b.op));
                     formula(b.lhs, d + 1);
                     formula(b.rhs, d + 1);
                   },
                   [&](const QuantifiedFormula& q) {
                     line(d, std::string(q.quantifier == Quantifier::Forall ? "Forall " : "Exists ") +
                                 bindings(q.bindings));
                     formula(q.body, d + 1);
                   },
                   [&](const LambdaFormula& l) {
                     line(d, "Lambda " + bindings(l.bindings));
                     formula(l.body, d + 1);
                   },
                   [&](const ApplyFormula& a) {
                     line(d, "Apply");
                     formula(a.head, d + 1);
                     term(a.arg, d + 1);
                   },
                   [&](const NcApplyFormula& n) {
                     line(d, "NcApply " + print_connective(n.conn, lang_));
                     for (const auto& a : n.args) term(a, d + 1);
                   },
                   [&](const ConditionalFormula& c) {
                     line(d, "Conditional");
                     formula(c.condition, d + 1);
                     term(c.then_branch, d + 1);
                     term(c.else_branch, d + 1);
                   },
                   [&](const LetFormula& l) {
                     line(d, "Let");
                     for (const auto& t : l.typings) line(d + 1, t.symbol + ": " + print_type(t.type, lang_));
                     for (const auto& def : l.definitions) {
                       line(d + 1, "Define");
                       term(def.lhs, d + 2);
                       term(def.rhs, d + 2);
                     }
                     term(l.body, d + 1);
                   },
                   [&](const BoolConstFormula& b) { line(d, b.value ? "True" : "False"); },
                   [&](const VariableFormula& v) { line(d, "BoolVariable " + v.name); },
               },
               f->node);
  }

  void value(const PropertyValuePtr& v, int d) {
    std::visit(overloaded{
                   [&](const TermPtr& t) { term(t, d); },
                   [&](const ListValue& l) {
                     line(d, "List");
                     if (l.default_value) {
                       line(d + 1, "Default");
                       term(l.default_value, d + 2);
                     }
                     for (const auto& o : l.overrides) {
                       line(d + 1, "Override " + print_term(o.key.term) + (o.key.bracket ? " (indexed)" : ""));
                       value(o.value, d + 2);
                     }
                   },
               },
               v->node);
  }

 private:
  Language lang_;

  std::string bindings(const std::vector<Binding>& bs) const {
    std::vector<std::string> parts;
    for (const auto& b : bs) parts.push_back(b.type ? b.name + ":" + print_type(b.type, lang_) : b.name);
    return "[" + join(parts, ",") + "]";
  }
};

}  // namespace

std::string dump_unit(const AnnotatedFormula& u) {
  Dumper d(u.language);
  d.line(0, "Unit " + language_keyword(u.language) + " " + u.name + " " + role_name(u.role));
  std::visit(overloaded{
                 [&](const FormulaPtr& f) { d.formula(f, 1); },
                 [&](const TypeDecl& t) { d.line(1, "TypeDecl " + t.symbol + ": " + print_type(t.type, u.language)); },
                 [&](const LogicSpec& s) {
                   d.line(1, "LogicSpec " + s.logic_name);
                   for (const auto& p : s.properties) {
                     d.line(2, "Property " + p.name);
                     d.value(p.value, 3);
                   }
                 },
             },
             u.payload);
  if (u.source) d.line(1, "Source " + *u.source);
  if (u.useful_info) d.line(1, "UsefulInfo " + *u.useful_info);
  return d.out.str();
}

std::string dump_problem(const Problem& p) {
  std::string out;
  for (const auto& u : p) out += dump_unit(u);
  return out;
}

}  // namespace tptpnc
