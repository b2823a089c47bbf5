#ifndef ELLNB_ELLNB_HPP
#define ELLNB_ELLNB_HPP

#include "ellnb/errors.hpp"
#include "ellnb/coefficients.hpp"
#include "ellnb/series.hpp"
#include "ellnb/germs.hpp"
#include "ellnb/flows.hpp"
#include "ellnb/normalform.hpp"
#include "ellnb/neighborhood.hpp"
#include "ellnb/bifoliated.hpp"
#include "ellnb/dynamics.hpp"
#include "ellnb/io.hpp"

#endif  // ELLNB_ELLNB_HPP
