import {twice} from "./util.js";
if (!Math.twice) {}
function load(n) {
  return twice(n);
}
export {load};
