#ifndef FPKS_FPKS_HPP
#define FPKS_FPKS_HPP

#include "fpks/colouring.hpp"
#include "fpks/density.hpp"
#include "fpks/errors.hpp"
#include "fpks/ks_search.hpp"
#include "fpks/ksets.hpp"
#include "fpks/linalg3.hpp"
#include "fpks/montecarlo.hpp"
#include "fpks/povm.hpp"
#include "fpks/q2.hpp"
#include "fpks/quadrature.hpp"
#include "fpks/rational_witness.hpp"
#include "fpks/spin.hpp"
#include "fpks/theorem1.hpp"
#include "fpks/version.hpp"

#endif
