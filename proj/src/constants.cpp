#include "nicf/constants.hpp"

#include "nicf/errors.hpp"
#include "nicf/realg.hpp"

#include <array>

namespace nicf {

namespace {

const std::array<FieldConstants, 5>& table() {
    static const std::array<FieldConstants, 5> t = {{
        {1, {mpq_class(1, 2), 2}, "1", "1", "1",
         "1/(sqrt(2)-1)", "2.41421356237309504880168872421",
         "2.41421356237309504880168872421",
         "1/sqrt(3)", "0.577350269189625764509148780502"},
        {2, {mpq_class(1, 2), 3}, "sqrt((486-sqrt(3))/786)",
         "1/sqrt((486-sqrt(3))/786)", "1.27399701283429693059027784801",
         "1/(sqrt(2)*sqrt((486-sqrt(3))/786)-1)", "9.08592471448443501640818171793",
         "6.46410161513775458705489268301",
         "1/sqrt(2)", "0.707106781186547524400844362105"},
        {3, {mpq_class(1, 3), 3}, "sqrt((7+sqrt(21))/7)",
         "1/sqrt((7+sqrt(21))/7)", "0.777403419249645440066340482497",
         "2", "2",
         "1.36602540378443864676372317075",
         "1/root(4,13)", "0.526640387847926605456287706328"},
        {7, {mpq_class(2, 7), 7}, "sqrt((2093-9*sqrt(21))/2408)",
         "1/sqrt((2093-9*sqrt(21))/2408)", "1.08334129651103226199505023005",
         "1/(sqrt(2)*sqrt((2093-9*sqrt(21))/2408)-1)", "3.27419795578353491694354375095",
         "3.09716754070972706033441050243",
         "1/root(4,8)", "0.59460355750136053335874998528"},
        {11, {mpq_class(3, 11), 11}, "1/(5*sqrt(2))*sqrt(30-8*sqrt(5)-5*sqrt(11)+3*sqrt(55))",
         "5*sqrt(2)/sqrt(30-8*sqrt(5)-5*sqrt(11)+3*sqrt(55))", "1.67709108072619017550319991658",
         "1/(sqrt(3)/(5*sqrt(2))*sqrt(30-8*sqrt(5)-5*sqrt(11)+3*sqrt(55))-1)",
         "30.5149093176277695754929840499",
         "9.47493718553309977367239910501",
         "2/sqrt(5)", "0.894427190999915878563669467493"},
    }};
    return t;
}

Ball eval_constant(const std::string& text, FieldId field, long bits) {
    return RefinableComplex::parse(text, field).eval_adaptive(bits);
}

}  // namespace

const FieldConstants& constants(FieldId field) {
    field.require_euclidean();
    for (const auto& c : table()) {
        if (c.d == field.d()) return c;
    }
    throw InvalidField("d must be 1,2,3,7,11");
}

Ball kappa_ball(FieldId field, long bits) { return eval_constant(constants(field).kappa_expr, field, bits); }
Ball alpha_ball(FieldId field, long bits) { return eval_constant(constants(field).alpha_expr, field, bits); }
Ball rho_ball(FieldId field, long bits) { return rho(field).ball(bits); }

}  // namespace nicf
