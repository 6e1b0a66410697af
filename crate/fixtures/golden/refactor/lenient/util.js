var twice = function (x) {
  return 2 * x;
};
export {twice};
