#pragma once

#include <aap/bitstate.hpp>
#include <aap/elimination.hpp>
#include <aap/factored_rational.hpp>
#include <aap/linear_form.hpp>
#include <aap/matrix.hpp>
#include <aap/operators.hpp>
#include <aap/polynomial.hpp>
#include <aap/rational.hpp>
#include <aap/sampling.hpp>
#include <aap/simulate.hpp>
#include <aap/spectrum.hpp>
#include <aap/steady_state.hpp>
#include <aap/transfer.hpp>
#include <aap/transform.hpp>
#include <aap/unipoly.hpp>
